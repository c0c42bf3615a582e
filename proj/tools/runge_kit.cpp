// runge-kit: command-line front end.
//
//   runge-kit cusps      --level N [--group SPEC | --split-cartan p]
//   runge-kit orbits     --level N [--group SPEC | --split-cartan p] [--galois ...]
//   runge-kit divisors   --level N [--group SPEC | --split-cartan p] [--galois ...]
//   runge-kit runge-unit --sigma 0,2 [--s K] (group flags as above)
//   runge-kit bound      --theorem 1.1|1.2|refined|6.1|7.3|7.4|rho ...
//   runge-kit verify     --check prop-j|cor-j|siegel-d|siegel-global ...
//
// Exit codes: 0 success, 1 mathematical invariant failure (witness JSON on
// the output stream), 2 invalid input.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rungekit/analytic.hpp"
#include "rungekit/bounds.hpp"
#include "rungekit/cusps.hpp"
#include "rungekit/errors.hpp"
#include "rungekit/gl2.hpp"
#include "rungekit/hiprec.hpp"
#include "rungekit/io_json.hpp"
#include "rungekit/runge.hpp"
#include "rungekit/units.hpp"

namespace {

using namespace rungekit;

struct GroupArgs {
  long level = 0;
  std::string group;       // path or inline JSON
  long split_cartan = 0;   // prime p, 0 when unused
  std::string galois;      // "", "full", "detG", or comma-separated units
};

struct Resolved {
  Subgroup g;
  std::vector<long> h_k;
};

bool is_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

GroupSpec load_spec(const GroupArgs& args) {
  if (args.split_cartan != 0) {
    const long p = args.split_cartan;
    if (!is_prime(p) || p < 3) {
      throw std::invalid_argument(
          "--split-cartan expects an odd prime, got " + std::to_string(p));
    }
    if (args.level != 0 && args.level != p) {
      throw std::invalid_argument("--level contradicts --split-cartan");
    }
    GroupSpec spec;
    spec.level = p;
    for (long u = 2; u < p; ++u) {
      spec.generators.push_back(ResidueMatrix::diag(p, u, 1));
      spec.generators.push_back(ResidueMatrix::diag(p, 1, u));
    }
    spec.galois = GaloisChoice::kFull; // H_K = (Z/pZ)^*
    return spec;
  }

  if (!args.group.empty()) {
    std::string text = args.group;
    if (text.find('{') == std::string::npos) { // a path, not inline JSON
      std::ifstream f(text, std::ios::binary);
      if (!f) {
        throw std::invalid_argument("cannot read group spec file: " + text);
      }
      std::ostringstream buf;
      buf << f.rdbuf();
      text = buf.str();
    }
    GroupSpec spec = parse_group_spec(text);
    if (args.level != 0 && args.level != spec.level) {
      throw std::invalid_argument("--level contradicts the group spec level");
    }
    return spec;
  }

  if (args.level == 0) {
    throw std::invalid_argument(
        "one of --level, --group, --split-cartan is required");
  }
  GroupSpec spec;
  spec.level = args.level; // no generators: G = {+-1}
  return spec;
}

Resolved resolve_group(const GroupArgs& args) {
  GroupSpec spec = load_spec(args);

  if (!args.galois.empty()) {
    if (args.galois == "full") {
      spec.galois = GaloisChoice::kFull;
    } else if (args.galois == "detG") {
      spec.galois = GaloisChoice::kDetG;
    } else {
      spec.galois = GaloisChoice::kUnits;
      spec.units.clear();
      std::stringstream ss(args.galois);
      std::string item;
      while (std::getline(ss, item, ',')) {
        try {
          spec.units.push_back(std::stol(item));
        } catch (const std::exception&) {
          throw std::invalid_argument("--galois expects full, detG, or a "
                                      "comma-separated unit list");
        }
      }
      if (spec.units.empty()) {
        throw std::invalid_argument("--galois unit list is empty");
      }
    }
  }

  Resolved r;
  r.g = closure(spec.generators, spec.level);
  r.h_k = resolve_galois(spec, r.g);
  return r;
}

void emit(const std::string& doc, const std::string& output) {
  if (output.empty() || output == "-") {
    std::cout << doc;
    return;
  }
  std::ofstream f(output, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot open output file: " + output);
  f << doc;
}

SplitCartanCase parse_case(const std::string& s) {
  if (s == "6.4") return SplitCartanCase::k64;
  if (s == "6.5") return SplitCartanCase::k65;
  if (s == "6.6") return SplitCartanCase::k66;
  throw std::invalid_argument("--case must be 6.4, 6.5, or 6.6");
}

PlaceKind parse_place(const std::string& s) {
  if (s == "infinite") return PlaceKind::kInfinite;
  if (s == "finite-coprime") return PlaceKind::kFiniteCoprime;
  if (s == "finite-dividing") return PlaceKind::kFiniteDividing;
  throw std::invalid_argument(
      "--place must be infinite, finite-coprime, or finite-dividing");
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Runge-method toolkit for modular curves"};
  app.require_subcommand(1);

  GroupArgs gargs;
  std::string output;

  auto add_group_flags = [&](CLI::App* cmd) {
    cmd->add_option("--level", gargs.level, "level N (alone: G = {+-1})");
    cmd->add_option("--group", gargs.group, "group spec: file path or inline JSON");
    cmd->add_option("--split-cartan", gargs.split_cartan,
                    "split Cartan mod p with H_K = (Z/pZ)^*");
    cmd->add_option("--galois", gargs.galois,
                    "override H_K: full, detG, or units u1,u2,...");
    cmd->add_option("-o,--output", output, "output file (default stdout)");
  };

  CLI::App* cmd_cusps = app.add_subcommand("cusps", "geometric cusps and widths");
  add_group_flags(cmd_cusps);

  CLI::App* cmd_orbits = app.add_subcommand("orbits", "Galois orbits of cusps");
  add_group_flags(cmd_orbits);

  CLI::App* cmd_divisors =
      app.add_subcommand("divisors", "divisors of the units w_a");
  add_group_flags(cmd_divisors);

  CLI::App* cmd_runge =
      app.add_subcommand("runge-unit", "certified Runge unit for an orbit set");
  add_group_flags(cmd_runge);
  std::vector<long> sigma;
  long s_param = 0;
  cmd_runge->add_option("--sigma", sigma, "orbit indices (comma-separated)")
      ->required()
      ->delimiter(',');
  cmd_runge->add_option("--s", s_param, "budget parameter s (default |sigma|)");

  CLI::App* cmd_bound = app.add_subcommand("bound", "evaluate a height bound");
  std::string theorem;
  long b_level = 0, b_gorder = 0, b_gprime = 0, b_s = 1, b_p = 0;
  bool infinite_only = false;
  std::string b_budget = "1", b_case = "6.4", b_place = "infinite";
  std::string b_delta = "1";
  double b_hprime = 0.0;
  cmd_bound
      ->add_option("--theorem", theorem,
                   "one of 1.1, 1.2, refined, 6.1, 7.3, 7.4, rho")
      ->required();
  cmd_bound->add_option("--level", b_level, "level N");
  cmd_bound->add_option("--group-order", b_gorder, "|G|");
  cmd_bound->add_option("--gprime-order", b_gprime, "|G'|");
  cmd_bound->add_option("--s", b_s, "number of orbits outside sigma");
  cmd_bound->add_option("--B", b_budget, "l1 exponent budget (integer)");
  cmd_bound->add_flag("--infinite-only", infinite_only,
                      "restrict to archimedean places");
  cmd_bound->add_option("--p", b_p, "prime p (6.1, 7.3, rho)");
  cmd_bound->add_option("--case", b_case, "6.4, 6.5, or 6.6 (theorem 6.1)");
  cmd_bound->add_option("--h-prime", b_hprime, "h' (lemma 7.4)");
  cmd_bound->add_option("--delta", b_delta, "isogeny degree (lemma 7.4)");
  cmd_bound->add_option("--place", b_place,
                        "infinite, finite-coprime, finite-dividing (rho)");
  cmd_bound->add_option("-o,--output", output, "output file (default stdout)");

  CLI::App* cmd_verify =
      app.add_subcommand("verify", "seeded analytic certification sweep");
  std::string check;
  long v_level = 0, v_samples = 10000;
  std::uint64_t v_seed = 42;
  int v_terms = 40;
  bool hi_prec = false;
  cmd_verify
      ->add_option("--check", check,
                   "prop-j, cor-j, siegel-d, or siegel-global")
      ->required();
  cmd_verify->add_option("--level", v_level, "level N (siegel checks)");
  cmd_verify->add_option("--samples", v_samples, "sample count");
  cmd_verify->add_option("--seed", v_seed, "RNG seed");
  cmd_verify->add_option("--terms", v_terms, "series truncation");
  cmd_verify->add_flag("--hi-prec", hi_prec,
                       "re-evaluate the worst witness in 160-bit arithmetic");
  cmd_verify->add_option("-o,--output", output, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*cmd_cusps) {
      Resolved r = resolve_group(gargs);
      emit(cusps_json(r.g, geometric_cusps(r.g)), output);
      return 0;
    }

    if (*cmd_orbits) {
      Resolved r = resolve_group(gargs);
      auto geoms = geometric_cusps(r.g);
      auto orbits = galois_orbits(r.g, r.h_k, geoms);
      emit(orbits_json(r.g, r.h_k, geoms, orbits), output);
      return 0;
    }

    if (*cmd_divisors) {
      Resolved r = resolve_group(gargs);
      UnitGaloisGroup gp = unit_galois_group(r.g, r.h_k);
      auto geoms = geometric_cusps(r.g);
      auto orbits = galois_orbits(r.g, r.h_k, geoms);
      auto labels = all_label_classes(r.g.level);
      std::vector<Divisor> divisors;
      divisors.reserve(labels.size());
      for (const UnitLabel& a : labels) divisors.push_back(div_w(a, gp, geoms));
      DivisorMatrix dm = divisor_matrix(gp, geoms, orbits);
      emit(divisors_json(r.g, gp.order(), geoms, labels, divisors,
                         rank(dm.entries)),
           output);
      return 0;
    }

    if (*cmd_runge) {
      Resolved r = resolve_group(gargs);
      UnitGaloisGroup gp = unit_galois_group(r.g, r.h_k);
      auto geoms = geometric_cusps(r.g);
      auto orbits = galois_orbits(r.g, r.h_k, geoms);
      RungeUnit u = runge_unit(gp, geoms, orbits, sigma, s_param);
      RungeVerification v = verify_runge_unit(gp, geoms, orbits, u);
      emit(runge_unit_json(u, v), output);
      return v.pass ? 0 : 1;
    }

    if (*cmd_bound) {
      BoundReport r;
      if (theorem == "1.1") {
        r = report_theorem_1_1(b_level, b_gorder);
      } else if (theorem == "1.2") {
        r = report_theorem_1_2(b_level, b_gorder, b_s, infinite_only);
      } else if (theorem == "refined") {
        r = report_refined(b_level, b_gprime, Integer(b_budget), infinite_only);
      } else if (theorem == "6.1") {
        r = report_split_cartan(b_p, parse_case(b_case));
      } else if (theorem == "7.3") {
        r = report_x0_plus(b_p);
      } else if (theorem == "7.4") {
        r = report_isogeny_gap(b_hprime, Integer(b_delta));
      } else if (theorem == "rho") {
        r = report_rho(b_level, parse_place(b_place), b_p);
      } else {
        throw std::invalid_argument(
            "--theorem must be one of 1.1, 1.2, refined, 6.1, 7.3, 7.4, rho");
      }
      emit(bound_json(r), output);
      return 0;
    }

    if (*cmd_verify) {
      VerificationReport r;
      if (check == "prop-j") {
        r = check_prop_j(v_samples, v_seed, v_terms);
      } else if (check == "cor-j") {
        r = check_cor_j(v_samples, v_seed, v_terms);
      } else if (check == "siegel-d") {
        r = check_siegel_D(v_level, v_samples, v_seed, v_terms);
      } else if (check == "siegel-global") {
        r = check_siegel_global(v_level, v_samples, v_seed, v_terms);
      } else {
        throw std::invalid_argument(
            "--check must be prop-j, cor-j, siegel-d, or siegel-global");
      }
      std::optional<HiPrecRefinement> hi;
      if (hi_prec) hi = refine_worst_witness(r);
      emit(verification_json(r, hi), output);
      return (r.pass || r.informational_only) ? 0 : 1;
    }

    throw std::invalid_argument("no subcommand given");
  } catch (const InvariantError& e) {
    try {
      emit(invariant_error_json(e), output);
    } catch (const std::exception&) {
      std::cout << invariant_error_json(e);
    }
    std::cerr << "invariant violation: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
