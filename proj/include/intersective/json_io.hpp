#pragma once

#include <json.hpp>

#include "intersective/certify.hpp"
#include "intersective/lifting.hpp"
#include "intersective/oracle.hpp"

namespace intersective {

using ordered_json = nlohmann::ordered_json;

// Integers above 2^53 are carried as decimal strings so the output survives
// consumers that parse JSON numbers as doubles.
inline constexpr u64 kJsonNativeIntMax = u64(1) << 53;

inline ordered_json json_uint(u64 v) {
  if (v > kJsonNativeIntMax) return std::to_string(v);
  return v;
}

inline u64 uint_from_json(const ordered_json& j) {
  if (j.is_string()) return std::stoull(j.get<std::string>());
  return j.get<u64>();
}

inline ordered_json json_of_family(const Family& f) {
  ordered_json arr = ordered_json::array();
  for (const auto& m : f.members) arr.push_back(m.value);
  return arr;
}

inline ordered_json json_of_certificate(const Certificate& cert) {
  ordered_json j;
  j["type"] = "certificate";
  j["subset"] = cert.subset;
  ordered_json witnesses = ordered_json::object();
  for (const auto& [p, i] : cert.odd_prime_witnesses) witnesses[std::to_string(p)] = i;
  j["odd_prime_witnesses"] = std::move(witnesses);
  j["dyadic_witness"] = cert.dyadic_witness;
  return j;
}

inline Certificate certificate_from_json(const ordered_json& j) {
  Certificate cert;
  cert.subset = j.at("subset").get<std::vector<int>>();
  for (const auto& [key, value] : j.at("odd_prime_witnesses").items())
    cert.odd_prime_witnesses.emplace_back(std::stoull(key), value.get<int>());
  std::sort(cert.odd_prime_witnesses.begin(), cert.odd_prime_witnesses.end());
  cert.dyadic_witness = j.at("dyadic_witness").get<int>();
  return cert;
}

inline ordered_json json_of_obstruction(const Obstruction& ob) {
  ordered_json j;
  j["kind"] = obstruction_kind_name(ob.kind);
  j["prime"] = json_uint(ob.prime);
  j["k"] = ob.k;
  j["modulus"] = json_uint(ob.modulus);
  ordered_json evidence = ordered_json::array();
  for (const auto& ev : ob.evidence) {
    ordered_json e;
    e["index"] = ev.index;
    if (ob.kind == ObstructionKind::dyadic)
      e["mod8"] = ev.mod8;
    else
      e["legendre"] = ev.legendre;
    evidence.push_back(std::move(e));
  }
  j["evidence"] = std::move(evidence);
  return j;
}

inline ordered_json json_of_counterexample(const Counterexample& cx) {
  ordered_json j;
  j["type"] = "counterexample";
  ordered_json obs = ordered_json::array();
  for (const auto& ob : cx.obstructions) obs.push_back(json_of_obstruction(ob));
  j["obstructions"] = std::move(obs);
  j["primary"] = cx.primary;
  return j;
}

inline Counterexample counterexample_from_json(const ordered_json& j) {
  Counterexample cx;
  for (const auto& jo : j.at("obstructions")) {
    Obstruction ob;
    const std::string kind = jo.at("kind").get<std::string>();
    if (kind == "no_qr_prime")
      ob.kind = ObstructionKind::no_qr_prime;
    else if (kind == "odd_prime")
      ob.kind = ObstructionKind::odd_prime;
    else if (kind == "dyadic")
      ob.kind = ObstructionKind::dyadic;
    else
      fail(errc::invalid_argument, "unknown obstruction kind: " + kind);
    ob.prime = uint_from_json(jo.at("prime"));
    ob.k = jo.at("k").get<int>();
    ob.modulus = uint_from_json(jo.at("modulus"));
    for (const auto& je : jo.at("evidence")) {
      FactorEvidence ev;
      ev.index = je.at("index").get<int>();
      if (ob.kind == ObstructionKind::dyadic)
        ev.mod8 = je.at("mod8").get<int>();
      else
        ev.legendre = je.at("legendre").get<int>();
      ob.evidence.push_back(ev);
    }
    cx.obstructions.push_back(std::move(ob));
  }
  cx.primary = j.at("primary").get<int>();
  return cx;
}

inline ordered_json json_of_inconclusive(const Inconclusive& inc) {
  ordered_json j;
  j["type"] = "inconclusive";
  j["reason"] = inc.reason;
  j["searched_bound"] = json_uint(inc.searched_bound);
  return j;
}

inline ordered_json json_of_verdict(const Verdict& v) {
  if (const auto* cert = std::get_if<Certificate>(&v)) return json_of_certificate(*cert);
  if (const auto* cx = std::get_if<Counterexample>(&v)) return json_of_counterexample(*cx);
  return json_of_inconclusive(std::get<Inconclusive>(v));
}

inline Verdict verdict_from_json(const ordered_json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "certificate") return certificate_from_json(j);
  if (type == "counterexample") return counterexample_from_json(j);
  if (type == "inconclusive") {
    Inconclusive inc;
    inc.reason = j.at("reason").get<std::string>();
    inc.searched_bound = uint_from_json(j.at("searched_bound"));
    return inc;
  }
  fail(errc::invalid_argument, "unknown verdict type: " + type);
}

inline ordered_json json_of_root_witness(const RootWitness& w) {
  ordered_json j;
  j["root"] = json_uint(w.root);
  j["modulus"] = json_uint(w.modulus);
  ordered_json comps = ordered_json::array();
  for (const auto& c : w.components) {
    ordered_json jc;
    jc["prime"] = json_uint(c.prime);
    jc["exponent"] = c.exponent;
    jc["modulus"] = json_uint(c.modulus);
    jc["factor_index"] = c.factor_index;
    jc["local_root"] = json_uint(c.local_root);
    comps.push_back(std::move(jc));
  }
  j["components"] = std::move(comps);
  return j;
}

inline ordered_json json_of_scan_report(const ScanReport& rep) {
  ordered_json j;
  j["modulus"] = json_uint(rep.modulus);
  j["solvable"] = rep.solvable;
  if (rep.solvable) j["witness"] = json_uint(rep.witness);
  j["residues_checked"] = json_uint(rep.residues_checked);
  return j;
}

inline ordered_json json_of_prime_pair_report(const PrimePairReport& r) {
  ordered_json j;
  j["p"] = json_uint(r.p);
  j["q"] = json_uint(r.q);
  j["reciprocity_condition"] = r.reciprocity_condition;
  j["engine_verdict"] = json_of_verdict(r.engine_verdict);
  j["discrepancy"] = r.discrepancy;
  return j;
}

inline ordered_json json_of_squarefree_pair_report(const SquareFreePairReport& r) {
  ordered_json j;
  j["c"] = r.c;
  j["d"] = r.d;
  j["c1d1"] = r.c1d1;
  j["conditions"] = ordered_json{{"odd_prime_clause", r.odd_prime_condition},
                                       {"dyadic_clause", r.dyadic_condition}};
  j["engine_verdict"] = json_of_verdict(r.engine_verdict);
  j["discrepancy"] = r.discrepancy;
  return j;
}

}  // namespace intersective
