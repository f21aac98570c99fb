#pragma once

#include <cstdint>
#include <iostream>
#include <string>
#include <type_traits>
#include <vector>

#include <CLI11.hpp>

#include "mpcodes/builtin.hpp"
#include "mpcodes/json_io.hpp"
#include "mpcodes/repro.hpp"
#include "mpcodes/search.hpp"

// Command surface. Exit codes: 0 success, 1 domain or internal error,
// 2 argument or JSON parse error.

namespace mpcodes {
namespace cli {

struct State {
  bool json = false;
  unsigned workers = 1;
  std::uint64_t cap_codewords = kDefaultCodewordCap;
  std::uint64_t cap_search = kDefaultSearchCap;

  std::string path;        // primary input file per subcommand
  std::string pred;        // matrix check / search predicate
  std::string method = "formula";
  std::string weight_path;
  std::string fwd_profile_path, rev_profile_path;
  std::string example;
  std::size_t rows = 0, cols = 0;
  int m_prime = -1;
  bool no_enumerate = false;

  std::ostream* out = nullptr;
};

namespace detail {

inline std::string base_dir(const std::string& path) {
  auto pos = path.find_last_of('/');
  return pos == std::string::npos ? std::string(".") : path.substr(0, pos);
}

// Predicate strings: frr | nsc | rnsc | qo | sfrr=<profile.json> |
// two-way=<m'> | po=<m'>.
inline bool eval_matrix_pred(const RingMatrix& a, const std::string& pred) {
  auto eq = pred.find('=');
  std::string head = pred.substr(0, eq);
  std::string arg = eq == std::string::npos ? "" : pred.substr(eq + 1);
  auto num = [&]() -> unsigned {
    try {
      return static_cast<unsigned>(std::stoul(arg));
    } catch (...) {
      throw ParseError("predicate \"" + head + "\" needs a numeric argument");
    }
  };
  if (head == "frr") return is_frr(a);
  if (head == "nsc") return is_nsc(a);
  if (head == "rnsc") return is_reversely_nsc(a);
  if (head == "qo") return is_quasi_orthogonal(a);
  if (head == "sfrr") {
    if (arg.empty()) throw ParseError("sfrr=<profile.json> needs a file");
    return is_sfrr(a, profile_from_json(load_json_file(arg)));
  }
  if (head == "two-way") return is_two_way_sfrr(a, num());
  if (head == "po") return has_partitioned_orthogonal(a, num());
  throw ParseError("unknown predicate \"" + pred + "\"");
}

inline SearchPredicate parse_search_pred(const std::string& pred) {
  auto eq = pred.find('=');
  std::string head = pred.substr(0, eq);
  if (head == "nsc") return SearchPredicate::nsc();
  if (head == "qo") return SearchPredicate::quasi_orthogonal();
  if (head == "two-way") {
    if (eq == std::string::npos)
      throw ParseError("two-way=<m'> needs a split index");
    try {
      return SearchPredicate::two_way_sfrr(
          static_cast<unsigned>(std::stoul(pred.substr(eq + 1))));
    } catch (const ParseError&) {
      throw;
    } catch (...) {
      throw ParseError("two-way=<m'> needs a numeric split index");
    }
  }
  throw ParseError("search predicates: two-way=<m'> | qo | nsc");
}

inline void emit(State& st, const Json& j, const std::string& text) {
  if (st.json)
    *st.out << j.dump(2) << "\n";
  else
    *st.out << text;
}

inline std::string show_code(const Code& c) {
  std::ostringstream os;
  os << "length " << c.length() << ", size " << c.size();
  if (c.is_linear()) {
    os << ", linear\n";
    for (const auto& g : c.spanning_generators()) {
      os << "  (";
      for (std::size_t i = 0; i < g.size(); ++i)
        os << (i ? " " : "") << c.ring()->show(g[i]);
      os << ")\n";
    }
  } else {
    os << ", not linear (" << c.size() << " codewords)\n";
  }
  return os.str();
}

inline void cmd_ring_info(State& st) {
  RingPtr r = Ring::make(ring_spec_from_json(load_json_file(st.path)));
  Json comps = Json::array();
  std::ostringstream os;
  os << r->name() << ": order " << r->order() << ", characteristic "
     << r->characteristic() << ", " << r->unit_count() << " units\n";
  os << "local components: ";
  bool first = true;
  for (const auto& lc : decompose(r)) {
    comps.push_back(Json{{"spec", ring_spec_to_json(lc.ring->spec())},
                         {"order", lc.ring->order()},
                         {"idempotent", element_to_json(*r, lc.idempotent.index)}});
    os << (first ? "" : ", ") << lc.ring->name() << " (e = "
       << r->show(lc.idempotent.index) << ")";
    first = false;
  }
  os << "\n";
  emit(st,
       Json{{"spec", ring_spec_to_json(r->spec())},
            {"order", r->order()},
            {"characteristic", r->characteristic()},
            {"units", r->unit_count()},
            {"components", std::move(comps)}},
       os.str());
}

inline int cmd_matrix_check(State& st) {
  RingMatrix a = matrix_from_json(load_json_file(st.path));
  bool result = eval_matrix_pred(a, st.pred);
  emit(st, Json{{"pred", st.pred}, {"result", result}},
       st.pred + ": " + (result ? "true" : "false") + "\n");
  return 0;
}

inline void cmd_matrix_cert(State& st) {
  RingMatrix a = matrix_from_json(load_json_file(st.path));
  FrrOutcome outcome = frr_certificate(a);
  if (std::holds_alternative<NotFrr>(outcome))
    throw make_not_frr_error(a, std::get<NotFrr>(outcome));
  const auto& cert = std::get<FrrCertificate>(outcome);
  std::ostringstream os;
  os << "right inverse B: " << cert.right_inverse.show() << "\n";
  os << "kernel G: " << cert.kernel.show() << "\n";
  emit(st,
       Json{{"right_inverse", matrix_to_json(cert.right_inverse)},
            {"kernel", matrix_to_json(cert.kernel)}},
       os.str());
}

inline void cmd_code_params(State& st) {
  Code c = code_from_json(load_json_file(st.path));
  CodeParams p = c.params();
  Json j{{"length", p.n},
         {"size", p.size},
         {"d_hamming", p.d_hamming},
         {"is_free", p.is_free},
         {"is_mds", p.is_mds}};
  if (p.is_free)
    j["rank"] = p.rank;
  else
    j["rank"] = nullptr;
  std::ostringstream os;
  os << "length " << p.n << ", size " << p.size << ", d_H " << p.d_hamming;
  if (p.is_free) os << ", free of rank " << p.rank;
  os << (p.is_mds ? ", MDS" : "") << "\n";
  if (!st.weight_path.empty()) {
    WeightTable w = weight_from_json(c.ring(), load_json_file(st.weight_path));
    unsigned dw = c.min_distance(w);
    j["d_weight"] = dw;
    os << "d_w " << dw << "\n";
  }
  emit(st, j, os.str());
}

inline void cmd_code_dual(State& st) {
  Code c = code_from_json(load_json_file(st.path));
  Code d = dual(c, st.cap_codewords);
  emit(st, code_to_json(d), "dual: " + show_code(d));
}

inline void cmd_mpc_build(State& st) {
  MpcSpec spec =
      mpc_spec_from_json(load_json_file(st.path), base_dir(st.path));
  Code c = build(spec, st.cap_codewords);
  emit(st, Json{{"code", code_to_json(c)}, {"size", c.size()}},
       show_code(c));
}

inline int cmd_mpc_dual(State& st) {
  MpcSpec spec =
      mpc_spec_from_json(load_json_file(st.path), base_dir(st.path));
  if (st.method != "formula" && st.method != "brute" && st.method != "both")
    throw ParseError("--method takes formula, brute or both");
  std::ostringstream os;
  Json j;
  bool agree = true;
  if (st.method == "formula" || st.method == "both") {
    Code d = dual_mpc(spec, st.cap_codewords);
    j["formula"] = code_to_json(d);
    os << "formula dual: " << show_code(d);
    if (st.method == "both") {
      Code b = dual(build(spec, st.cap_codewords), st.cap_codewords);
      agree = d.same_words(b);
      j["agree"] = agree;
      os << "brute dual agrees: " << (agree ? "true" : "false") << "\n";
    }
  } else {
    Code b = dual(build(spec, st.cap_codewords), st.cap_codewords);
    j["brute"] = code_to_json(b);
    os << "brute dual: " << show_code(b);
  }
  emit(st, j, os.str());
  return agree ? 0 : 1;
}

inline void cmd_mpc_bounds(State& st) {
  MpcSpec spec =
      mpc_spec_from_json(load_json_file(st.path), base_dir(st.path));
  BoundOptions opt;
  opt.cap = st.cap_codewords;
  opt.enumerate = !st.no_enumerate;
  if (st.m_prime >= 0) opt.m_prime = static_cast<unsigned>(st.m_prime);
  if (!st.fwd_profile_path.empty())
    opt.forward_profile = profile_from_json(load_json_file(st.fwd_profile_path));
  if (!st.rev_profile_path.empty())
    opt.reverse_profile = profile_from_json(load_json_file(st.rev_profile_path));
  if (!st.weight_path.empty())
    opt.weight =
        weight_from_json(spec.ring(), load_json_file(st.weight_path));
  BoundReport rep = run_bounds(spec, opt);
  Json j = bound_report_to_json(rep);
  std::ostringstream os;
  auto line = [&](const char* key) {
    os << key << ": " << (j[key].is_null() ? "-" : j[key].dump()) << "\n";
  };
  for (const char* key :
       {"thm31_U", "thm31_L", "thm45_U", "thm45_L", "thm45_U_equality",
        "thm45_L_equality", "thm47", "thm47_equality", "cor48_primal",
        "cor48_dual", "thm51_lower_52", "thm51_lower_53", "thm51_upper_54",
        "thm51_lower_510", "m_prime", "code_size", "dual_size", "d_hamming",
        "d_hamming_dual", "d_weight"})
    line(key);
  if (rep.forward_profile)
    os << "forward profile: " << rep.forward_profile->show() << "\n";
  if (rep.reverse_profile)
    os << "reverse profile: " << rep.reverse_profile->show() << "\n";
  if (rep.best_lower)
    os << "best lower bound: " << *rep.best_lower << " ("
       << rep.best_lower_source << ")\n";
  os << "verified sandwich: " << (rep.verified_sandwich ? "yes" : "no")
     << "\n";
  os << "applicability:\n";
  for (const auto& [k, v] : rep.applicability)
    os << "  " << k << ": " << v << "\n";
  emit(st, j, os.str());
}

inline void cmd_search(State& st) {
  RingPtr r = Ring::make(ring_spec_from_json(load_json_file(st.path)));
  auto hits = run_search(r, st.rows, st.cols, parse_search_pred(st.pred),
                         st.cap_search, st.workers);
  Json mats = Json::array();
  std::ostringstream os;
  os << "found " << hits.size() << " matrices\n";
  for (const auto& a : hits) {
    mats.push_back(matrix_to_json(a));
    os << "  " << a.show() << "\n";
  }
  emit(st, Json{{"count", hits.size()}, {"matrices", std::move(mats)}},
       os.str());
}

inline int cmd_repro(State& st) {
  ReproReport rep = run_repro(st.example, st.workers);
  Json claims = Json::array();
  std::ostringstream os;
  for (const auto& c : rep.claims) {
    claims.push_back(
        Json{{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    os << (c.pass ? "PASS  " : "FAIL  ") << c.name;
    if (!c.detail.empty()) os << " (" << c.detail << ")";
    os << "\n";
  }
  std::size_t passed = 0;
  for (const auto& c : rep.claims) passed += c.pass;
  os << rep.example << ": " << passed << "/" << rep.claims.size()
     << " claims pass\n";
  emit(st,
       Json{{"example", rep.example},
            {"claims", std::move(claims)},
            {"all_pass", rep.all_pass()}},
       os.str());
  return rep.all_pass() ? 0 : 1;
}

}  // namespace detail

inline int cli_main(std::vector<std::string> args, std::ostream& out,
                    std::ostream& err) {
  State st;
  st.out = &out;

  CLI::App app{"matrix product codes over finite commutative Frobenius rings"};
  app.require_subcommand(1);
  app.add_flag("--json", st.json, "emit JSON instead of text");
  app.add_option("--workers", st.workers, "worker threads for search");
  app.add_option("--cap-codewords", st.cap_codewords,
                 "codeword enumeration cap");
  app.add_option("--cap-search", st.cap_search, "search space cap");

  int rc = 0;
  auto run = [&](auto fn) {
    return [&st, fn, &rc]() {
      if constexpr (std::is_void_v<decltype(fn(st))>)
        fn(st);
      else
        rc = fn(st);
    };
  };

  auto* ring = app.add_subcommand("ring", "ring inspection");
  ring->require_subcommand(1);
  auto* ring_info = ring->add_subcommand("info", "describe a ring");
  ring_info->add_option("spec", st.path, "ring spec JSON")->required();
  ring_info->callback(run(detail::cmd_ring_info));

  auto* matrix = app.add_subcommand("matrix", "matrix classification");
  matrix->require_subcommand(1);
  auto* mcheck = matrix->add_subcommand("check", "evaluate a predicate");
  mcheck->add_option("matrix", st.path, "matrix JSON")->required();
  mcheck
      ->add_option("--pred", st.pred,
                   "frr | nsc | rnsc | qo | sfrr=<profile.json> | "
                   "two-way=<m'> | po=<m'>")
      ->required();
  mcheck->callback(run(detail::cmd_matrix_check));
  auto* mcert = matrix->add_subcommand("cert", "emit the row-rank certificate");
  mcert->add_option("matrix", st.path, "matrix JSON")->required();
  mcert->callback(run(detail::cmd_matrix_cert));

  auto* code = app.add_subcommand("code", "single-code operations");
  code->require_subcommand(1);
  auto* cparams = code->add_subcommand("params", "length, size, distance");
  cparams->add_option("code", st.path, "code JSON")->required();
  cparams->add_option("--weight", st.weight_path, "weight table JSON");
  cparams->callback(run(detail::cmd_code_params));
  auto* cdual = code->add_subcommand("dual", "compute the dual code");
  cdual->add_option("code", st.path, "code JSON")->required();
  cdual->callback(run(detail::cmd_code_dual));

  auto* mpc = app.add_subcommand("mpc", "matrix product code operations");
  mpc->require_subcommand(1);
  auto* mbuild = mpc->add_subcommand("build", "construct the code");
  mbuild->add_option("spec", st.path, "mpc spec JSON")->required();
  mbuild->callback(run(detail::cmd_mpc_build));
  auto* mdual = mpc->add_subcommand("dual", "compute the dual");
  mdual->add_option("spec", st.path, "mpc spec JSON")->required();
  mdual->add_option("--method", st.method, "formula | brute | both");
  mdual->callback(run(detail::cmd_mpc_dual));
  auto* mbounds = mpc->add_subcommand("bounds", "distance bound report");
  mbounds->add_option("spec", st.path, "mpc spec JSON")->required();
  mbounds->add_option("--m-prime", st.m_prime, "two-way split index");
  mbounds->add_option("--forward-profile", st.fwd_profile_path,
                      "profile JSON");
  mbounds->add_option("--reverse-profile", st.rev_profile_path,
                      "profile JSON");
  mbounds->add_option("--weight", st.weight_path, "weight table JSON");
  mbounds->add_flag("--no-enumerate", st.no_enumerate,
                    "skip true-distance enumeration");
  mbounds->callback(run(detail::cmd_mpc_bounds));

  auto* search = app.add_subcommand("search", "exhaustive matrix search");
  search->add_option("--ring", st.path, "ring spec JSON")->required();
  search->add_option("--rows", st.rows, "row count")->required();
  search->add_option("--cols", st.cols, "column count")->required();
  search
      ->add_option("--pred", st.pred, "two-way=<m'> | qo | nsc")
      ->required();
  search->callback(run(detail::cmd_search));

  auto* repro = app.add_subcommand("repro", "recompute a worked example");
  repro->add_option("example", st.example, "ex4.1 | ex5.1 | ex5.2 | ex5.3")
      ->required();
  repro->callback(run(detail::cmd_repro));

  std::vector<const char*> argv;
  argv.push_back("mpcodes");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return rc;
}

}  // namespace cli
}  // namespace mpcodes
