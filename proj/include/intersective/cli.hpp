#pragma once

#include <CLI11.hpp>

#include <charconv>
#include <chrono>
#include <cstdlib>
#include <ostream>
#include <string>
#include <vector>

#include "intersective/json_io.hpp"
#include "intersective/oracle.hpp"
#include "intersective/search.hpp"

namespace intersective::cli {

// Exit codes: 0 certificate, 1 counterexample, 2 invalid input, 3 inconclusive.
inline int verdict_exit_code(const Verdict& v) {
  if (is_certificate(v)) return 0;
  if (is_counterexample(v)) return 1;
  return 3;
}

struct Limits {
  u64 scan_budget = kDefaultScanBudget;
  u64 prime_search_bound = 1'000'000;
  std::size_t subset_cap = kDefaultSubsetCap;
};

inline u64 parse_u64(const std::string& text, const std::string& what) {
  u64 v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    fail(errc::invalid_argument, what + ": not a valid unsigned integer: " + text);
  return v;
}

// Overridable limits, echoed back in every envelope so reported runs are
// reproducible from their own output.
inline Limits limits_from_env() {
  Limits lim;
  if (const char* v = std::getenv("INTERSECTIVE_SCAN_BUDGET"))
    lim.scan_budget = parse_u64(v, "INTERSECTIVE_SCAN_BUDGET");
  if (const char* v = std::getenv("INTERSECTIVE_PRIME_BOUND"))
    lim.prime_search_bound = parse_u64(v, "INTERSECTIVE_PRIME_BOUND");
  if (const char* v = std::getenv("INTERSECTIVE_SUBSET_CAP"))
    lim.subset_cap = static_cast<std::size_t>(parse_u64(v, "INTERSECTIVE_SUBSET_CAP"));
  return lim;
}

inline DecideOptions decide_options(const Limits& lim) {
  DecideOptions opt;
  opt.nonresidue_search_bound = lim.prime_search_bound;
  opt.subset_cap = lim.subset_cap;
  return opt;
}

// Family argument: one comma-separated token, e.g. "13,17,221" or "-7,11,19".
inline std::vector<i64> parse_family_values(const std::string& text) {
  std::vector<i64> values;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string token = text.substr(pos, comma - pos);
    i64 v = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size())
      fail(errc::invalid_argument, "family: not an integer: '" + token + "'");
    values.push_back(v);
    pos = comma + 1;
    if (comma == text.size()) break;
  }
  return values;
}

namespace detail {

inline ordered_json json_of_limits(const Limits& lim) {
  ordered_json j;
  j["scan_budget"] = json_uint(lim.scan_budget);
  j["prime_search_bound"] = json_uint(lim.prime_search_bound);
  j["subset_cap"] = json_uint(static_cast<u64>(lim.subset_cap));
  return j;
}

inline void emit_envelope(std::ostream& out, const std::string& command,
                          ordered_json input_echo, ordered_json result,
                          std::chrono::steady_clock::time_point start) {
  const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - start);
  ordered_json env;
  env["schema_version"] = "1";
  env["command"] = command;
  env["input_echo"] = std::move(input_echo);
  env["result"] = std::move(result);
  env["timing_ms"] = elapsed.count();
  out << env.dump(2) << "\n";
}

inline std::string format_subset(const std::vector<int>& subset) {
  std::string s = "{";
  for (std::size_t i = 0; i < subset.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(subset[i]);
  }
  return s + "}";
}

inline void describe_verdict(std::ostream& out, const Family& f, const Verdict& v) {
  if (const auto* cert = std::get_if<Certificate>(&v)) {
    out << "verdict: certificate (roots exist modulo every positive integer)\n";
    out << "  subset T = " << format_subset(cert->subset) << "\n";
    for (const auto& [p, i] : cert->odd_prime_witnesses)
      out << "  prime " << p << ": member " << i << " (" << f.value(i)
          << ") is a quadratic residue\n";
    out << "  dyadic witness: member " << cert->dyadic_witness << " ("
        << f.value(cert->dyadic_witness) << " = 1 mod 8)\n";
    return;
  }
  if (const auto* cx = std::get_if<Counterexample>(&v)) {
    out << "verdict: counterexample (some modulus admits no root)\n";
    int idx = 0;
    for (const auto& ob : cx->obstructions) {
      ++idx;
      out << "  obstruction[" << idx << "]: ";
      switch (ob.kind) {
        case ObstructionKind::no_qr_prime:
          out << "every member is a non-residue mod " << ob.prime;
          break;
        case ObstructionKind::odd_prime:
          out << "no member is a quadratic residue mod " << ob.prime << " (which divides a member)";
          break;
        case ObstructionKind::dyadic:
          out << "no member is 1 mod 8";
          break;
      }
      out << "; rootless modulus " << ob.prime << "^" << ob.k * f.size() << " = " << ob.modulus
          << "\n";
    }
    out << "  primary: obstruction[" << cx->primary << "], modulus "
        << cx->obstructions[static_cast<size_t>(cx->primary - 1)].modulus << "\n";
    return;
  }
  const auto& inc = std::get<Inconclusive>(v);
  out << "verdict: inconclusive\n  " << inc.reason << "\n";
}

struct ParsedFamily {
  std::vector<i64> values;
  Family family;
};

inline ParsedFamily family_from_arg(const std::string& arg) {
  ParsedFamily pf;
  pf.values = parse_family_values(arg);
  pf.family = validate_family(pf.values);
  return pf;
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"decide whether (x^2-a_1)...(x^2-a_n) has roots modulo every positive integer"};
  app.require_subcommand(1);

  std::string family_arg;
  bool json_flag = false;
  u64 modulus_arg = 0;
  bool minimal_flag = false;
  u64 bound_arg = 0;
  bool bound_given = false;
  u64 max_modulus_arg = 0;
  int search_n = 3;
  i64 pool_max = 50;
  bool negatives = false;
  std::string verdict_filter = "all";
  u64 limit_arg = 100;
  u64 p_arg = 0, q_arg = 0;
  i64 c_arg = 0, d_arg = 0;

  auto* check = app.add_subcommand("check", "decide a family and print the verdict");
  check->add_option("family", family_arg, "comma-separated members, e.g. 13,17,221")->required();
  check->add_flag("--json", json_flag, "emit a JSON envelope");

  auto* root = app.add_subcommand("root", "construct a root modulo M for a certified family");
  root->add_option("family", family_arg)->required();
  root->add_option("--modulus", modulus_arg, "target modulus M")->required();
  root->add_flag("--json", json_flag);

  auto* cx_cmd = app.add_subcommand("counterexample", "report obstructions and rootless moduli");
  cx_cmd->add_option("family", family_arg)->required();
  cx_cmd->add_flag("--minimal", minimal_flag, "also search the smallest rootless modulus");
  cx_cmd->add_option("--bound", bound_arg, "search bound for --minimal")->needs("--minimal");
  cx_cmd->add_flag("--json", json_flag);

  auto* verify = app.add_subcommand("verify", "confirm the verdict against exhaustive scans");
  verify->add_option("family", family_arg)->required();
  verify->add_option("--max-modulus", max_modulus_arg, "scan every modulus up to this")->required();
  verify->add_flag("--json", json_flag);

  auto* search = app.add_subcommand("search", "enumerate families from a square-free pool");
  search->add_option("--n", search_n, "family size (3..8)")->required();
  search->add_option("--pool-max", pool_max, "largest member magnitude")->required();
  search->add_flag("--negatives", negatives, "include negative pool values");
  search->add_option("--verdict", verdict_filter, "certificate|counterexample|all");
  search->add_option("--limit", limit_arg, "maximum results");
  search->add_flag("--json", json_flag);

  auto* cor1 = app.add_subcommand("corollary1", "check the (p, q, pq) family of two odd primes");
  cor1->add_option("p", p_arg)->required();
  cor1->add_option("q", q_arg)->required();
  cor1->add_flag("--json", json_flag);

  auto* cor2 = app.add_subcommand("corollary2", "check the (c, d, c1*d1) family of two square-free integers");
  cor2->add_option("c", c_arg)->required();
  cor2->add_option("d", d_arg)->required();
  cor2->add_flag("--json", json_flag);

  std::vector<const char*> argv;
  argv.push_back("intersective");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    const Limits lim = limits_from_env();
    const DecideOptions opt = decide_options(lim);

    if (*check) {
      const auto pf = detail::family_from_arg(family_arg);
      const Verdict verdict = decide_intersective(pf.family, opt);
      if (json_flag) {
        ordered_json echo;
        echo["family"] = pf.values;
        echo["limits"] = detail::json_of_limits(lim);
        detail::emit_envelope(out, "check", std::move(echo), json_of_verdict(verdict), start);
      } else {
        detail::describe_verdict(out, pf.family, verdict);
      }
      return verdict_exit_code(verdict);
    }

    if (*root) {
      const auto pf = detail::family_from_arg(family_arg);
      const Verdict verdict = decide_intersective(pf.family, opt);
      ordered_json echo;
      echo["family"] = pf.values;
      echo["modulus"] = json_uint(modulus_arg);
      echo["limits"] = detail::json_of_limits(lim);
      if (!is_certificate(verdict)) {
        if (json_flag) {
          ordered_json result;
          result["verdict"] = json_of_verdict(verdict);
          detail::emit_envelope(out, "root", std::move(echo), std::move(result), start);
        } else {
          detail::describe_verdict(out, pf.family, verdict);
        }
        err << "error: root construction requires a certified family\n";
        return verdict_exit_code(verdict);
      }
      const RootWitness w = root_mod(pf.family, std::get<Certificate>(verdict), modulus_arg);
      if (json_flag) {
        ordered_json result;
        result["verdict"] = json_of_verdict(verdict);
        result["root_witness"] = json_of_root_witness(w);
        detail::emit_envelope(out, "root", std::move(echo), std::move(result), start);
      } else {
        out << "f(" << w.root << ") = 0 (mod " << w.modulus << ")\n";
        for (const auto& c : w.components)
          out << "  mod " << c.prime << "^" << c.exponent << " = " << c.modulus << ": x = "
              << c.local_root << " via member " << c.factor_index << "\n";
      }
      return 0;
    }

    if (*cx_cmd) {
      const auto pf = detail::family_from_arg(family_arg);
      const Verdict verdict = decide_intersective(pf.family, opt);
      ordered_json echo;
      echo["family"] = pf.values;
      echo["minimal"] = minimal_flag;
      bound_given = cx_cmd->count("--bound") > 0;
      if (bound_given) echo["bound"] = json_uint(bound_arg);
      echo["limits"] = detail::json_of_limits(lim);

      ordered_json result;
      result["verdict"] = json_of_verdict(verdict);
      std::optional<u64> minimal;
      if (minimal_flag && is_counterexample(verdict)) {
        const auto& cx = std::get<Counterexample>(verdict);
        const u64 primary_mod = cx.obstructions[static_cast<size_t>(cx.primary - 1)].modulus;
        const u64 bound = bound_given ? bound_arg : std::min(primary_mod, lim.scan_budget);
        minimal = minimal_failing_modulus(pf.family, bound, lim.scan_budget);
        result["minimal_failing_modulus"] = minimal ? ordered_json(json_uint(*minimal)) : ordered_json(nullptr);
      }
      if (json_flag) {
        detail::emit_envelope(out, "counterexample", std::move(echo), std::move(result), start);
      } else {
        detail::describe_verdict(out, pf.family, verdict);
        if (minimal_flag && is_counterexample(verdict)) {
          if (minimal)
            out << "  minimal failing modulus: " << *minimal << "\n";
          else
            out << "  minimal failing modulus: not found below the bound\n";
        }
      }
      return verdict_exit_code(verdict);
    }

    if (*verify) {
      const auto pf = detail::family_from_arg(family_arg);
      const Verdict verdict = decide_intersective(pf.family, opt);
      ordered_json echo;
      echo["family"] = pf.values;
      echo["max_modulus"] = json_uint(max_modulus_arg);
      echo["limits"] = detail::json_of_limits(lim);

      bool confirmed = false;
      std::string note;
      if (is_certificate(verdict)) {
        confirmed = true;
        for (u64 m = 1; m <= max_modulus_arg; ++m) {
          if (!has_root_mod(pf.family, m, lim.scan_budget).solvable) {
            confirmed = false;
            note = "no root mod " + std::to_string(m);
            break;
          }
        }
        if (confirmed) note = "roots exist for every modulus up to " + std::to_string(max_modulus_arg);
      } else if (is_counterexample(verdict)) {
        const auto v = verify_counterexample(pf.family, std::get<Counterexample>(verdict), lim.scan_budget);
        confirmed = v.ok;
        note = v.ok ? "all obstructions re-checked, rootless moduli confirmed" : v.reason;
      } else {
        note = std::get<Inconclusive>(verdict).reason;
      }

      if (json_flag) {
        ordered_json result;
        result["verdict"] = json_of_verdict(verdict);
        result["confirmed"] = confirmed;
        result["note"] = note;
        detail::emit_envelope(out, "verify", std::move(echo), std::move(result), start);
      } else {
        detail::describe_verdict(out, pf.family, verdict);
        out << (confirmed ? "confirmed: " : "NOT confirmed: ") << note << "\n";
      }
      if (is_inconclusive(verdict)) return 3;
      return confirmed ? verdict_exit_code(verdict) : 3;
    }

    if (*search) {
      SearchQuery query;
      query.pool_bound = pool_max;
      query.allow_negative = negatives;
      query.n = search_n;
      query.max_results = static_cast<std::size_t>(limit_arg);
      if (verdict_filter == "certificate")
        query.require = RequireVerdict::certificate;
      else if (verdict_filter == "counterexample")
        query.require = RequireVerdict::counterexample;
      else if (verdict_filter == "all")
        query.require = RequireVerdict::all;
      else
        fail(errc::invalid_argument, "--verdict must be certificate, counterexample or all");

      search_families(query, [&](const SearchResult& r) {
        if (json_flag) {
          ordered_json line;
          line["schema_version"] = "1";
          line["command"] = "search";
          line["family"] = json_of_family(r.family);
          line["verdict"] = json_of_verdict(r.verdict);
          out << line.dump() << "\n";
        } else {
          out << "family (";
          const auto vals = r.family.values();
          for (std::size_t i = 0; i < vals.size(); ++i) out << (i ? "," : "") << vals[i];
          out << "): ";
          if (is_certificate(r.verdict)) {
            out << "certificate\n";
          } else if (is_counterexample(r.verdict)) {
            const auto& cx = std::get<Counterexample>(r.verdict);
            out << "counterexample, primary modulus "
                << cx.obstructions[static_cast<size_t>(cx.primary - 1)].modulus << "\n";
          } else {
            out << "inconclusive\n";
          }
        }
      }, opt);
      return 0;
    }

    if (*cor1) {
      const PrimePairReport r = check_prime_pair(p_arg, q_arg, opt);
      ordered_json echo;
      echo["p"] = json_uint(p_arg);
      echo["q"] = json_uint(q_arg);
      echo["limits"] = detail::json_of_limits(lim);
      if (json_flag) {
        detail::emit_envelope(out, "corollary1", std::move(echo), json_of_prime_pair_report(r), start);
      } else {
        out << "(p/q) = (q/p) = +1: " << (r.reciprocity_condition ? "holds" : "fails") << "\n";
        const Family f = validate_family({static_cast<i64>(r.p), static_cast<i64>(r.q),
                                          static_cast<i64>(r.p) * static_cast<i64>(r.q)});
        detail::describe_verdict(out, f, r.engine_verdict);
        out << "discrepancy: " << (r.discrepancy ? "YES" : "no") << "\n";
      }
      return verdict_exit_code(r.engine_verdict);
    }

    if (*cor2) {
      const SquareFreePairReport r = check_squarefree_pair(c_arg, d_arg, opt);
      ordered_json echo;
      echo["c"] = c_arg;
      echo["d"] = d_arg;
      echo["limits"] = detail::json_of_limits(lim);
      if (json_flag) {
        detail::emit_envelope(out, "corollary2", std::move(echo), json_of_squarefree_pair_report(r), start);
      } else {
        out << "family (" << r.c << ", " << r.d << ", " << r.c1d1 << ")\n";
        out << "odd-prime clause: " << (r.odd_prime_condition ? "holds" : "fails")
            << "; dyadic clause: " << (r.dyadic_condition ? "holds" : "fails") << "\n";
        const Family f = validate_family({r.c, r.d, r.c1d1});
        detail::describe_verdict(out, f, r.engine_verdict);
        out << "discrepancy: " << (r.discrepancy ? "YES" : "no") << "\n";
      }
      return verdict_exit_code(r.engine_verdict);
    }
  } catch (const error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace intersective::cli
