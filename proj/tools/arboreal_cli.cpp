#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "arboreal/dynamics.hpp"
#include "arboreal/experiments.hpp"
#include "arboreal/factor.hpp"
#include "arboreal/report_io.hpp"
#include "arboreal/rng.hpp"
#include "arboreal/textio.hpp"
#include "arboreal/wreath.hpp"

namespace {

using namespace arboreal;

void emit(const std::string& text, const std::string& out_path) {
  std::string body = text;
  if (body.empty() || body.back() != '\n') body += "\n";
  std::cout << body;
  if (!out_path.empty()) {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open output file: " + out_path);
    f << body;
  }
}

template <typename Report>
void emit_report(const Report& rep, const std::string& format, const std::string& out_path) {
  emit(format == "json" ? to_json(rep) : to_csv(rep), out_path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact statistics for iterated wreath groups, critical-orbit "
               "genericity tests, parametric discriminants, and finite-field censuses"};
  app.require_subcommand(1);
  app.fallthrough();

  uint64_t cap_bits = kDefaultIterBitCap;
  if (const char* env = std::getenv("ARBOREAL_CAP_BITS")) {
    try {
      cap_bits = parse_u64(env);
    } catch (const std::exception&) {
      std::cerr << "bad ARBOREAL_CAP_BITS value\n";
      return 2;
    }
  }

  std::string format = "csv";
  std::string out_path;
  int workers = 1;
  app.add_option("--output", format, "report encoding")
      ->transform(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_option("--out", out_path, "also write the report to this file");
  app.add_option("--workers", workers, "scan parallelism")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  // wreath-dist
  auto* cmd_dist = app.add_subcommand("wreath-dist", "cycle-pattern distribution at depth n");
  int wd_d = 2, wd_n = 1;
  uint64_t wd_cap = kDefaultDegreeCap;
  cmd_dist->add_option("--d", wd_d, "branching degree")->required();
  cmd_dist->add_option("--n", wd_n, "depth")->required();
  cmd_dist->add_option("--cap-degree", wd_cap, "bound on d^n")->capture_default_str();

  // wreath-fpp
  auto* cmd_fpp = app.add_subcommand("wreath-fpp", "fixed-point proportion at depth n");
  int wf_d = 2, wf_n = 1;
  std::string wf_method = "recursive";
  uint64_t wf_cap = kDefaultDegreeCap;
  cmd_fpp->add_option("--d", wf_d, "branching degree")->required();
  cmd_fpp->add_option("--n", wf_n, "depth")->required();
  cmd_fpp->add_option("--method", wf_method, "computation route")
      ->transform(CLI::IsMember({"from_distribution", "recursive"}))
      ->capture_default_str();
  cmd_fpp->add_option("--cap-degree", wf_cap, "bound on d^n (from_distribution route)")
      ->capture_default_str();

  // wreath-sample
  auto* cmd_sample = app.add_subcommand("wreath-sample", "sample uniform tree automorphisms");
  int ws_d = 2, ws_n = 1;
  uint64_t ws_count = 0, ws_seed = 0;
  cmd_sample->add_option("--d", ws_d, "branching degree")->required();
  cmd_sample->add_option("--n", ws_n, "depth")->required();
  cmd_sample->add_option("--count", ws_count, "number of samples")->required();
  cmd_sample->add_option("--seed", ws_seed, "RNG seed")->required();

  // dyn-check-h
  auto* cmd_h = app.add_subcommand("dyn-check-h", "genericity test for a polynomial map");
  std::string dh_field = "Q", dh_poly;
  int dh_N = 0;
  uint64_t dh_cap_bits = cap_bits;
  cmd_h->add_option("--field", dh_field, "coefficient field")->capture_default_str();
  cmd_h->add_option("--poly", dh_poly, "coefficients, constant first")->required();
  cmd_h->add_option("--N", dh_N, "orbit horizon")->required();
  cmd_h->add_option("--cap-bits", dh_cap_bits, "bit guard for iteration over Q")
      ->capture_default_str();

  // dyn-disc
  auto* cmd_disc = app.add_subcommand("dyn-disc", "parametric discriminant reports");
  std::string dd_field = "Q", dd_map, dd_poly;
  int dd_n = 1;
  uint64_t dd_cap_bits = cap_bits;
  cmd_disc->add_option("--field", dd_field, "coefficient field")->capture_default_str();
  cmd_disc->add_option("--map", dd_map, "rational map num=...;den=... (fiber discriminant)");
  cmd_disc->add_option("--poly", dd_poly, "polynomial for the iterated radical report");
  cmd_disc->add_option("--n", dd_n, "iteration depth (with --poly)")->capture_default_str();
  cmd_disc->add_option("--cap-bits", dd_cap_bits, "bit guard for iteration over Q")
      ->capture_default_str();

  // exp-cheb-scan
  auto* cmd_scan = app.add_subcommand("exp-cheb-scan", "census over a leading-coefficient slice");
  uint64_t cs_q = 0, cs_seed = 0, cs_cap = kDefaultScanCap;
  std::string cs_b = "1", cs_mbound;
  int cs_d = 2, cs_n = 1;
  cmd_scan->add_option("--q", cs_q, "field order")->required();
  cmd_scan->add_option("--b", cs_b, "leading coefficient")->capture_default_str();
  cmd_scan->add_option("--d", cs_d, "degree")->required();
  cmd_scan->add_option("--n", cs_n, "iteration depth")->required();
  cmd_scan->add_option("--seed", cs_seed, "RNG seed")->required();
  cmd_scan->add_option("--cap", cs_cap, "bound on q^d")->capture_default_str();
  cmd_scan->add_option("--m-bound", cs_mbound, "deviation threshold (default 8*d^n)");

  // exp-frob
  auto* cmd_frob = app.add_subcommand("exp-frob", "fiber census for a fixed map");
  uint64_t ef_q = 0, ef_samples = 0, ef_seed = 0, ef_cap = kDefaultExhaustiveCap;
  std::string ef_poly;
  int ef_n = 1;
  bool ef_exhaustive = false;
  cmd_frob->add_option("--q", ef_q, "field order")->required();
  cmd_frob->add_option("--poly", ef_poly, "coefficients, constant first")->required();
  cmd_frob->add_option("--n", ef_n, "iteration depth")->required();
  cmd_frob->add_flag("--exhaustive", ef_exhaustive, "factor every fiber");
  cmd_frob->add_option("--samples", ef_samples, "number of seeded draws");
  auto* ef_seed_opt = cmd_frob->add_option("--seed", ef_seed, "RNG seed");
  cmd_frob->add_option("--cap", ef_cap, "field-order bound for exhaustive mode")
      ->capture_default_str();

  // exp-orbit-primes
  auto* cmd_orbit = app.add_subcommand("exp-orbit-primes", "orbit-prime density up to X");
  std::string eo_poly, eo_a0 = "0";
  int64_t eo_X = 0, eo_cap = kDefaultSieveCap;
  cmd_orbit->add_option("--poly", eo_poly, "rational coefficients, constant first")->required();
  cmd_orbit->add_option("--a0", eo_a0, "orbit start")->capture_default_str();
  cmd_orbit->add_option("--X", eo_X, "sieve bound")->required();
  cmd_orbit->add_option("--cap", eo_cap, "bound on X")->capture_default_str();

  // exp-char2
  auto* cmd_char2 = app.add_subcommand("exp-char2", "affine fixed-point proportions over F_2[Y]/(Y^n)");
  int c2_n = 1;
  cmd_char2->add_option("--n", c2_n, "ladder height")->required();

  // exp-char2-quad
  auto* cmd_quad = app.add_subcommand("exp-char2-quad", "quadratic factor-degree audit over GF(2^k)");
  int cq_k = 1, cq_n = 1;
  cmd_quad->add_option("--k", cq_k, "extension degree")->required();
  cmd_quad->add_option("--n", cq_n, "iteration depth")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (app.got_subcommand(cmd_dist)) {
      emit_report(pattern_distribution(wd_d, wd_n, wd_cap), format, out_path);
    } else if (app.got_subcommand(cmd_fpp)) {
      FppMethod method = wf_method == "recursive" ? FppMethod::recursive
                                                  : FppMethod::from_distribution;
      FppReport rep{wf_d, wf_n, wf_method, fpp(wf_d, wf_n, method, wf_cap)};
      emit_report(rep, format, out_path);
    } else if (app.got_subcommand(cmd_sample)) {
      SampleReport rep;
      rep.d = ws_d;
      rep.n = ws_n;
      rep.count = ws_count;
      rep.seed = ws_seed;
      Rng rng(ws_seed);
      for (uint64_t i = 0; i < ws_count; ++i) {
        TreeAut t = wr_sample(ws_d, ws_n, rng);
        rep.tallies[CyclePattern::of_perm(leaf_action(t))] += 1;
      }
      emit_report(rep, format, out_path);
    } else if (app.got_subcommand(cmd_h)) {
      Field F = parse_field(dh_field);
      Poly f = parse_poly(F, dh_poly);
      emit_report(is_in_H(f, dh_N, dh_cap_bits), format, out_path);
    } else if (app.got_subcommand(cmd_disc)) {
      Field F = parse_field(dd_field);
      bool have_map = !dd_map.empty(), have_poly = !dd_poly.empty();
      if (have_map == have_poly)
        throw std::invalid_argument("dyn-disc: give exactly one of --map or --poly");
      if (have_map)
        emit_report(disc_param(parse_map(F, dd_map)), format, out_path);
      else
        emit_report(disc_iterate_radical(parse_poly(F, dd_poly), dd_n, dd_cap_bits),
                    format, out_path);
    } else if (app.got_subcommand(cmd_scan)) {
      Field F = parse_field("q=" + std::to_string(cs_q));
      FieldElem b = parse_elem(F, cs_b);
      std::optional<Rational> mb;
      if (!cs_mbound.empty()) mb = parse_rational(cs_mbound);
      emit_report(cheb_scan(F, b, cs_d, cs_n, cs_seed, workers, cs_cap, mb),
                  format, out_path);
    } else if (app.got_subcommand(cmd_frob)) {
      Field F = parse_field("q=" + std::to_string(ef_q));
      Poly f = parse_poly(F, ef_poly);
      if (ef_exhaustive == (ef_samples > 0))
        throw std::invalid_argument("exp-frob: give exactly one of --exhaustive or --samples");
      if (!ef_exhaustive && ef_seed_opt->count() == 0)
        throw std::invalid_argument("exp-frob: --seed is required in sampling mode");
      FrobReport rep = ef_exhaustive
                           ? frob_exhaustive(f, ef_n, ef_seed, workers, ef_cap)
                           : frob_sampled(f, ef_n, ef_samples, ef_seed, workers);
      emit_report(rep, format, out_path);
    } else if (app.got_subcommand(cmd_orbit)) {
      Field F = Field::rationals();
      Poly f = parse_poly(F, eo_poly);
      emit_report(orbit_prime_density(f, parse_rational(eo_a0), eo_X, workers, eo_cap),
                  format, out_path);
    } else if (app.got_subcommand(cmd_char2)) {
      emit_report(char2_fpp_ladder(c2_n), format, out_path);
    } else if (app.got_subcommand(cmd_quad)) {
      emit_report(char2_quadratic_scan(cq_k, cq_n, workers), format, out_path);
    }
  } catch (const CapExceeded& e) {
    std::cerr << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  return 0;
}
