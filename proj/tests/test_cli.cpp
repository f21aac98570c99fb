#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "mpcodes/builtin.hpp"
#include "mpcodes/cli.hpp"

using namespace mpcodes;

namespace {

struct TempDir {
  std::filesystem::path dir;
  TempDir() {
    dir = std::filesystem::temp_directory_path() / "mpcodes_cli_test";
    std::filesystem::create_directories(dir);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(dir, ec);
  }
  std::string write(const std::string& name, const std::string& text) {
    auto p = dir / name;
    std::ofstream(p) << text;
    return p.string();
  }
};

int run(std::vector<std::string> args, std::string* out_text = nullptr,
        std::string* err_text = nullptr) {
  std::ostringstream out, err;
  int rc = cli::cli_main(std::move(args), out, err);
  if (out_text) *out_text = out.str();
  if (err_text) *err_text = err.str();
  return rc;
}

}  // namespace

TEST_CASE("ring info", "[cli]") {
  TempDir t;
  std::string spec = t.write("z6.json", "{\"kind\":\"zmod\",\"n\":6}");
  std::string out;
  CHECK(run({"ring", "info", spec}, &out) == 0);
  CHECK(out.find("Z6") != std::string::npos);
  CHECK(out.find("2 units") != std::string::npos);
  CHECK(out.find("local components") != std::string::npos);

  CHECK(run({"--json", "ring", "info", spec}, &out) == 0);
  Json j = parse_json_text(out);
  CHECK(j["order"] == 6);
  CHECK(j["components"].size() == 2);
}

TEST_CASE("exit codes", "[cli]") {
  TempDir t;
  std::string bad = t.write("bad.json", "{\"kind\":");
  std::string zero = t.write("z0.json", "{\"kind\":\"zmod\",\"n\":0}");
  std::string err;
  CHECK(run({"ring", "info", bad}, nullptr, &err) == 2);
  CHECK(err.find("parse error") != std::string::npos);
  CHECK(run({"ring", "info", zero}, nullptr, &err) == 1);
  CHECK(err.find("error") != std::string::npos);
  CHECK(run({"nonsense"}, nullptr, &err) == 2);
  CHECK(run({}, nullptr, &err) == 2);
}

TEST_CASE("matrix check and certificate", "[cli]") {
  TempDir t;
  std::string mat = t.write("t.json", matrix_to_json(builtin::t3()).dump());
  std::string out;
  CHECK(run({"matrix", "check", mat, "--pred", "two-way=2"}, &out) == 0);
  CHECK(out.find("two-way=2: true") != std::string::npos);
  CHECK(run({"matrix", "check", mat, "--pred", "qo"}, &out) == 0);
  CHECK(out.find("qo: false") != std::string::npos);
  std::string err;
  CHECK(run({"matrix", "check", mat, "--pred", "bogus"}, nullptr, &err) == 2);

  CHECK(run({"matrix", "cert", mat}, &out) == 0);
  CHECK(out.find("right inverse B:") != std::string::npos);
  CHECK(out.find("kernel G:") != std::string::npos);
}

TEST_CASE("code params and dual", "[cli]") {
  TempDir t;
  std::string code = t.write("c1.json", code_to_json(builtin::c1()).dump());
  std::string out;
  CHECK(run({"code", "params", code}, &out) == 0);
  CHECK(out.find("length 4, size 2, d_H 4") != std::string::npos);
  CHECK(out.find("MDS") != std::string::npos);
  CHECK(run({"code", "dual", code}, &out) == 0);
  CHECK(out.find("size 8") != std::string::npos);
}

TEST_CASE("mpc build, dual and bounds", "[cli]") {
  TempDir t;
  MpcSpec s({builtin::c3(), builtin::c3(), builtin::c3_prime()},
            builtin::t3());
  std::string spec = t.write("spec.json", mpc_spec_to_json(s).dump());
  std::string out;
  CHECK(run({"mpc", "build", spec}, &out) == 0);
  CHECK(out.find("length 12, size 64") != std::string::npos);

  CHECK(run({"mpc", "dual", spec, "--method", "both"}, &out) == 0);
  CHECK(out.find("brute dual agrees: true") != std::string::npos);

  CHECK(run({"mpc", "bounds", spec}, &out) == 0);
  CHECK(out.find("best lower bound: 4") != std::string::npos);
  CHECK(out.find("verified sandwich: yes") != std::string::npos);

  CHECK(run({"--json", "mpc", "bounds", spec}, &out) == 0);
  Json j = parse_json_text(out);
  CHECK(j["d_hamming"] == 4);
  CHECK(j["thm51_upper_54"] == 4);
}

TEST_CASE("search command", "[cli]") {
  TempDir t;
  std::string ring = t.write("f2.json", "{\"kind\":\"zmod\",\"n\":2}");
  std::string out;
  CHECK(run({"search", "--ring", ring, "--rows", "3", "--cols", "3",
             "--pred", "two-way=2"},
            &out) == 0);
  CHECK(out.find("found 6 matrices") != std::string::npos);

  CHECK(run({"--json", "search", "--ring", ring, "--rows", "2", "--cols",
             "2", "--pred", "qo"},
            &out) == 0);
  Json j = parse_json_text(out);
  CHECK(j["count"] == 2);

  std::string err;
  CHECK(run({"search", "--ring", ring, "--rows", "3", "--cols", "3",
             "--pred", "mds"},
            nullptr, &err) == 2);
}

TEST_CASE("repro command", "[cli]") {
  std::string out;
  CHECK(run({"repro", "ex5.2"}, &out) == 0);
  CHECK(out.find("26/26 claims pass") != std::string::npos);
  std::string err;
  CHECK(run({"repro", "ex9.9"}, nullptr, &err) == 1);
  CHECK(err.find("no example named") != std::string::npos);
}
