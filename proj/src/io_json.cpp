#include "rungekit/io_json.hpp"

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

#include <json.hpp>

namespace rungekit {

namespace {

using nlohmann::json;

// mpz values that fit in 64 bits are emitted as JSON numbers; anything
// larger becomes a decimal string so no digit is ever lost to rounding.
json integer_json(const Integer& z) {
  if (z.fits_slong_p()) return json(static_cast<std::int64_t>(z.get_si()));
  return json(z.get_str());
}

json cusp_list_json(const std::vector<GeometricCusp>& geoms) {
  json list = json::array();
  for (const GeometricCusp& gc : geoms) {
    const Cusp rep = gc.representative();
    list.push_back(json{{"vector", {rep.x, rep.y}}, {"width", gc.width}});
  }
  return list;
}

json divisor_json(const Divisor& d) {
  json list = json::array();
  for (std::size_t i = 0; i < d.coefficients.size(); ++i) {
    list.push_back(json{{"cusp", i}, {"ord", integer_json(d.coefficients[i])}});
  }
  return list;
}

json pairs_json(const std::vector<std::pair<std::string, double>>& pairs) {
  json obj = json::object();
  for (const auto& [key, value] : pairs) obj[key] = value;
  return obj;
}

std::string dump_document(json& doc) {
  doc["schema"] = 1;
  return doc.dump(2) + "\n";
}

long require_long(const json& v, const char* what) {
  if (!v.is_number_integer()) {
    throw std::invalid_argument(std::string(what) + " must be an integer");
  }
  return v.get<long>();
}

} // namespace

GroupSpec parse_group_spec(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(e.what());
  }
  if (!doc.is_object()) {
    throw std::invalid_argument("group spec must be a JSON object");
  }

  GroupSpec spec;
  if (!doc.contains("level")) {
    throw std::invalid_argument("group spec is missing \"level\"");
  }
  spec.level = require_long(doc["level"], "\"level\"");
  if (spec.level < 2) {
    throw std::invalid_argument("\"level\" must be an integer >= 2");
  }

  if (doc.contains("generators")) {
    const json& gens = doc["generators"];
    if (!gens.is_array()) {
      throw std::invalid_argument("\"generators\" must be an array");
    }
    for (const json& g : gens) {
      if (!g.is_array() || g.size() != 2 || !g[0].is_array() ||
          !g[1].is_array() || g[0].size() != 2 || g[1].size() != 2) {
        throw std::invalid_argument(
            "each generator must be a 2x2 integer matrix [[a,b],[c,d]]");
      }
      const long a = require_long(g[0][0], "matrix entry");
      const long b = require_long(g[0][1], "matrix entry");
      const long c = require_long(g[1][0], "matrix entry");
      const long d = require_long(g[1][1], "matrix entry");
      try {
        spec.generators.emplace_back(spec.level, a, b, c, d);
      } catch (const std::invalid_argument&) {
        throw std::invalid_argument("generator " + g.dump() +
                                    " is not invertible mod " +
                                    std::to_string(spec.level));
      }
    }
  }

  if (doc.contains("galois")) {
    const json& gal = doc["galois"];
    if (gal.is_string()) {
      const std::string s = gal.get<std::string>();
      if (s == "full") {
        spec.galois = GaloisChoice::kFull;
      } else if (s == "detG") {
        spec.galois = GaloisChoice::kDetG;
      } else {
        throw std::invalid_argument(
            "\"galois\" must be \"full\", \"detG\", or a list of units");
      }
    } else if (gal.is_array()) {
      spec.galois = GaloisChoice::kUnits;
      for (const json& u : gal) {
        long v = require_long(u, "galois unit") % spec.level;
        if (v < 0) v += spec.level;
        if (std::gcd(v, spec.level) != 1) {
          throw std::invalid_argument("galois unit " + u.dump() +
                                      " is not invertible mod " +
                                      std::to_string(spec.level));
        }
        spec.units.push_back(v);
      }
      if (spec.units.empty()) spec.units.push_back(1);
    } else {
      throw std::invalid_argument(
          "\"galois\" must be \"full\", \"detG\", or a list of units");
    }
  }
  return spec;
}

std::vector<long> resolve_galois(const GroupSpec& spec, const Subgroup& g) {
  switch (spec.galois) {
  case GaloisChoice::kFull:
    return all_units(g.level);
  case GaloisChoice::kDetG:
    return g.det_image;
  case GaloisChoice::kUnits:
    return unit_subgroup(g.level, spec.units);
  }
  throw std::logic_error("unreachable galois choice");
}

std::string cusps_json(const Subgroup& g,
                       const std::vector<GeometricCusp>& geoms) {
  json doc{{"command", "cusps"},
           {"level", g.level},
           {"group_order", g.order()},
           {"cusp_count", geoms.size()},
           {"cusps", cusp_list_json(geoms)}};
  return dump_document(doc);
}

std::string orbits_json(const Subgroup& g, const std::vector<long>& h_k,
                        const std::vector<GeometricCusp>& geoms,
                        const std::vector<CuspOrbit>& orbits) {
  json orbit_list = json::array();
  for (const CuspOrbit& orbit : orbits) orbit_list.push_back(orbit.members);
  json doc{{"command", "orbits"},
           {"level", g.level},
           {"group_order", g.order()},
           {"h_k", h_k},
           {"cusps", cusp_list_json(geoms)},
           {"orbits", orbit_list},
           {"orbit_count", orbits.size()}};
  return dump_document(doc);
}

std::string divisors_json(const Subgroup& g, long gprime_order,
                          const std::vector<GeometricCusp>& geoms,
                          const std::vector<UnitLabel>& labels,
                          const std::vector<Divisor>& divisors,
                          long matrix_rank) {
  json cols = json::array();
  for (std::size_t j = 0; j < labels.size(); ++j) {
    cols.push_back(json{{"a", {labels[j].k1, labels[j].k2}},
                        {"divisor", divisor_json(divisors[j])}});
  }
  json doc{{"command", "divisors"},
           {"level", g.level},
           {"group_order", g.order()},
           {"gprime_order", gprime_order},
           {"cusps", cusp_list_json(geoms)},
           {"divisors", cols},
           {"rank", matrix_rank}};
  return dump_document(doc);
}

std::string runge_unit_json(const RungeUnit& u, const RungeVerification& v) {
  json exps = json::array();
  for (std::size_t j = 0; j < u.labels.size(); ++j) {
    if (u.exponents.entries[j] == 0) continue;
    exps.push_back(json{{"a", {u.labels[j].k1, u.labels[j].k2}},
                        {"b", integer_json(u.exponents.entries[j])}});
  }
  json verification{{"pass", v.pass},
                    {"positive_on_sigma", v.positive_on_sigma},
                    {"budget_ok", v.budget_ok},
                    {"degree_zero", v.degree_zero},
                    {"consistent", v.consistent}};
  if (!v.failure.empty()) verification["failure"] = v.failure;
  json doc{{"command", "runge-unit"},
           {"level", u.labels.front().level},
           {"sigma", u.sigma},
           {"s", u.s},
           {"exponents", exps},
           {"B", integer_json(u.budget_B)},
           {"bound", u.budget_bound},
           {"lambda_height", u.lambda_height},
           {"divisor", divisor_json(u.divisor)},
           {"verification", verification}};
  return dump_document(doc);
}

std::string bound_json(const BoundReport& r) {
  json doc{{"command", "bound"},
           {"theorem", r.theorem_tag},
           {"inputs", pairs_json(r.inputs)},
           {"value", r.value}};
  if (!r.breakdown.empty()) doc["breakdown"] = pairs_json(r.breakdown);
  return dump_document(doc);
}

std::string verification_json(const VerificationReport& r,
                              const std::optional<HiPrecRefinement>& hi) {
  json witness{{"re", r.worst_witness.re}, {"im", r.worst_witness.im}};
  if (r.worst_witness.has_label) {
    witness["a"] = {r.worst_witness.k1, r.worst_witness.k2};
  }
  json doc{{"command", "verify"},
           {"check", r.check_name},
           {"samples", r.sample_count},
           {"seed", r.seed},
           {"terms", r.terms},
           {"metric", r.metric_name},
           {"worst_value", r.worst_value},
           {"threshold", r.threshold},
           {"worst_witness", witness},
           {"pass", r.pass},
           {"informational_only", r.informational_only},
           {"probes", pairs_json(r.probes)}};
  if (r.level > 0) doc["level"] = r.level;
  if (hi.has_value()) {
    doc["hi_prec"] = json{{"precision_bits", hi->precision_bits},
                          {"worst_value", hi->worst_value}};
  }
  return dump_document(doc);
}

std::string invariant_error_json(const InvariantError& e) {
  json doc{{"error", "invariant-violation"}, {"message", e.what()}};
  if (!e.witness.empty()) {
    json w = json::parse(e.witness, nullptr, false);
    doc["witness"] = w.is_discarded() ? json(e.witness) : w;
  }
  return dump_document(doc);
}

} // namespace rungekit
