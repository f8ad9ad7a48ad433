// Runs the nine acceptance criteria and prints one PASS/FAIL line for each.
// Exit status is nonzero when any criterion fails.

#include "samples.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <numbers>

using namespace orthoscalar;

namespace {

constexpr double pi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::string detail;
  std::string first_failure;

  void check(bool ok, const std::string& what) {
    if (ok) return;
    if (pass) first_failure = what;
    pass = false;
  }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

// 1. Lines: the worked example and random brick line systems.
Outcome lines_construction() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  const SubspaceSystem triple(2, {vec({1, 0}), vec({0, 1}), vec({1, 1})});
  const auto example = unitarize_lines(triple);
  Matrix g(2, 2);
  g << 0.75, -0.25, -0.25, 0.75;
  o.check((example.gram.matrix() - g).norm() < 1e-12, "worked example Gram");
  const WeightVector chi{1, {0.75, 0.75, 0.5}};
  o.check(std::abs(example.character.head - chi.head) < 1e-12, "worked example head");
  for (std::size_t i = 0; i < 3; ++i) o.check(std::abs(example.character.tail[i] - chi.tail[i]) < 1e-12, "worked example character");

  Rng rng(1001);
  double worst = 0;
  for (int t = 0; t < 100; ++t) {
    const Index dim = 2 + t % 3;
    const std::size_t count = static_cast<std::size_t>(dim + 1 + (t / 3) % (6 - dim));
    const SubspaceSystem s = samples::random_brick_lines(dim, std::max<std::size_t>(count, 3), rng);
    const auto cert = unitarize_lines(s);
    const double r = oracle::orthoscalar_residual(s, cert.gram.matrix(), cert.character);
    worst = std::max(worst, std::max(r, cert.residual));
    for (double a : cert.character.tail) o.check(a > 0 && a < 1, "character entry outside (0,1) in trial " + std::to_string(t));
  }
  o.check(worst < 1e-9, "residual " + fmt("%.3g", worst));
  const double elapsed = seconds_since(start);
  o.check(elapsed < 5.0, "runtime " + fmt("%.2f s", elapsed));
  o.detail = "100 systems, worst residual " + fmt("%.2e", worst) + ", " + fmt("%.2f s", elapsed);
  return o;
}

// 2. Coxeter algebra on rationals.
Outcome coxeter_algebra() {
  Outcome o;
  Rng rng(1002);
  std::uniform_int_distribution<int> num(-50, 50), den(1, 16);
  const auto r = [&] { return Rational(num(rng), den(rng)); };
  int comparisons = 0;
  for (int t = 0; t < 200; ++t) {
    const RationalWeights a{r(), {r(), r(), r(), r()}};
    o.check(c_circle(c_circle(a)) == a && c_bullet(c_bullet(a)) == a, "involution");
    o.check(def_form(apply_word(pair_power(1), a)) == def_form(a), "def under pair word");
    for (auto variant : all_closed_form_variants)
      for (std::int64_t m = 0; m <= 8; ++m, ++comparisons)
        o.check(closed_form_iterate(variant, m, a) == apply_word(closed_form_word(variant, m), a), "closed form");
  }
  std::uniform_int_distribution<std::int64_t> entry(-30, 30);
  for (int t = 0; t < 2000; ++t) {
    const DimensionVector d{entry(rng), {entry(rng), entry(rng), entry(rng), entry(rng)}};
    const DimensionVector e = apply_word(pair_power(1), d);
    o.check(tits_form(e) == tits_form(d) && def_form(e) == def_form(d), "forms under pair word");
  }
  o.check(apply_word(pair_power(2), DimensionVector{1, {0, 0, 0, 1}}) == DimensionVector{3, {1, 1, 1, 2}}, "anchor");
  o.detail = std::to_string(comparisons) + " exact closed-form comparisons";
  return o;
}

// 3. Functor pipeline from the one-dimensional D4 bases.
Outcome functor_pipeline() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  Rng rng(1003);
  std::uniform_real_distribution<double> def(-0.02, -0.001), spread(-0.05, 0.05);
  double worst = 0;
  int steps = 0;
  for (int p = 1; p <= 4; ++p) {
    const std::size_t q = static_cast<std::size_t>(p - 1);
    // a0 = a_p = 1 and the other three share 1 - def.
    const double d = def(rng);
    std::array<double, 3> split{1.0 / 3 + spread(rng) / 3, 1.0 / 3 + spread(rng) / 3, 0};
    split[2] = 1.0 - split[0] - split[1];
    WeightVector chi{1, std::vector<double>(4)};
    for (std::size_t i = 0, k = 0; i < 4; ++i) chi.tail[i] = i == q ? 1.0 : split[k++] * (1.0 - d);
    std::vector<Matrix> subspaces(4, zero_subspace(1));
    subspaces[q] = full_subspace(1);
    UnitarizedSystem s = UnitarizedSystem::certify(SubspaceSystem(1, subspaces, GramMatrix::identity(1)), chi);
    DimensionVector expected = dimension_vector(s.system());
    for (int k = 1; k <= 10; ++k, ++steps) {
      const std::string where = "position " + std::to_string(p) + " step " + std::to_string(k);
      try {
        s = functor_minus(s);
      } catch (const Error& e) {
        o.check(false, where + ": " + e.what());
        break;
      }
      expected = apply_word(pair_power(1), expected);
      const DimensionVector got = dimension_vector(s.system());
      o.check(got == expected, where + ": dimension " + to_string(got));
      o.check(is_brick(s.system()), where + ": not a brick");
      const double r = oracle::orthoscalar_residual(s.system(), s.gram().matrix(), s.character());
      worst = std::max(worst, r);
      o.check(r < 1e-8, where + ": residual " + fmt("%.3g", r));
      const auto verdict = admissible_discrete(got, s.character());
      o.check(verdict.admissible, where + ": character fails " + (verdict.failed_conditions.empty() ? "" : verdict.failed_conditions.front()));
    }
  }
  const double elapsed = seconds_since(start);
  o.check(elapsed < 10.0, "runtime " + fmt("%.2f s", elapsed));
  o.detail = std::to_string(steps) + " applications of F-, worst residual " + fmt("%.2e", worst) + ", " + fmt("%.2f s", elapsed);
  return o;
}

// 4. Admissibility against the reduction oracle, and the canonical character.
Outcome admissibility_consistency() {
  Outcome o;
  Rng rng(1004);
  long agree = 0, total = 0, admissible = 0;
  for (const auto& f : samples::discrete_families(4, true)) {
    const DimensionVector d = discrete_dimension(f);
    for (int t = 0; t < 1000; ++t, ++total) {
      const RationalWeights chi = samples::random_discrete_character(d, rng);
      const bool expected = oracle::admissible_by_reduction(samples::to_dim(d), samples::to_chi(chi));
      const bool got = admissible_discrete(d, chi).admissible;
      agree += expected == got;
      admissible += expected;
      o.check(expected == got, to_string(d) + " " + to_string(chi));
    }
  }
  int canonical = 0;
  for (const auto& f : samples::discrete_families(10, true)) {
    const DimensionVector d = discrete_dimension(f);
    o.check(admissible_discrete(d, canonical_character(d)).admissible, "canonical character for " + to_string(d));
    ++canonical;
  }
  o.detail = std::to_string(agree) + "/" + std::to_string(total) + " verdicts agree (" + std::to_string(admissible) +
             " admissible), " + std::to_string(canonical) + " canonical characters admissible";
  return o;
}

double weighted_residual(const std::array<Matrix, 4>& p, const std::array<double, 4>& a) {
  Matrix sum = -Matrix::Identity(2, 2);
  for (std::size_t k = 0; k < 4; ++k) sum += a[k] * p[k];
  return sum.norm();
}

// 5. Explicit projections, the mu map and its ellipse.
Outcome knr_construction() {
  Outcome o;
  Rng rng(1005);
  std::uniform_real_distribution<double> angle(0.0, 2 * pi);
  double worst_sum = 0, worst_axiom = 0, worst_mu = 0, worst_ellipse = 0, worst_contraction = 0;
  int contractions = 0;
  for (int t = 0; t < 50; ++t) {
    const auto a = samples::random_knr_weights(rng);
    const KnrWeights w = KnrWeights::from_tail(a);
    for (int s = 0; s < 20; ++s) {
      const KnrParameters params = KnrParameters::make(w, samples::interior_lambda(w, rng), angle(rng));
      const auto p = knr_projections(params);
      worst_sum = std::max(worst_sum, weighted_residual(p, a));
      for (const auto& m : p) {
        Eigen::SelfAdjointEigenSolver<Matrix> es((m + m.adjoint()) / 2.0, Eigen::EigenvaluesOnly);
        const double rank_gap = std::abs(es.eigenvalues()(0)) + std::abs(es.eigenvalues()(1) - 1.0);
        worst_axiom = std::max({worst_axiom, (m * m - m).norm(), (m - m.adjoint()).norm(), rank_gap});
      }
      const Complex mu = knr_mu(params);
      const Complex independent = oracle::normalized_slope(oracle::image_of(p[0]), oracle::image_of(p[1]), oracle::image_of(p[2]),
                                                           oracle::image_of(p[3]));
      worst_mu = std::max(worst_mu, std::abs(mu - independent));
      const Complex printed = oracle::printed_mu(w.sorted(), params.lambda, params.x);
      worst_ellipse = std::max(worst_ellipse, std::abs(knr_ellipse(w, params.lambda).at(params.x) - printed));
    }
    // Contraction, read in the sorted frame where the limit point is stated.
    const KnrWeights sorted = KnrWeights::from_tail(w.sorted());
    if (sorted.A() > 0.05) {
      const double lambda = sorted.A() + 1e-10 * (sorted.lambda_upper() - sorted.A());
      const Complex limit(0.5 - sorted.C() / (2 * sorted.A()), 0.0);
      const Complex near = knr_mu(KnrParameters::make(sorted, lambda, angle(rng)));
      worst_contraction = std::max(worst_contraction, std::abs(near - limit));
      ++contractions;
    }
  }
  o.check(worst_sum < 1e-10, "sum a_i P_i - I = " + fmt("%.3g", worst_sum));
  o.check(worst_axiom < 1e-10, "projection axioms " + fmt("%.3g", worst_axiom));
  o.check(worst_mu < 1e-9, "mu vs cross-ratio " + fmt("%.3g", worst_mu));
  o.check(worst_ellipse < 1e-10, "ellipse vs formula " + fmt("%.3g", worst_ellipse));
  o.check(worst_contraction < 1e-4, "contraction " + fmt("%.3g", worst_contraction));
  o.detail = "1000 samples: residual " + fmt("%.1e", worst_sum) + ", mu " + fmt("%.1e", worst_mu) + ", ellipse " +
             fmt("%.1e", worst_ellipse) + ", contraction " + fmt("%.1e", worst_contraction) + " over " +
             std::to_string(contractions) + " weights";
  return o;
}

// 6. Inverse solver round trips, and one character for every mu.
Outcome inverse_solver() {
  Outcome o;
  Rng rng(1006);
  double worst = 0;
  const WeightVector fixed = samples::knr_character({0.45, 0.6, 0.4, 0.55});
  o.check(admissible_continuous(fixed).admissible, "fixed character admissible");
  for (int t = 0; t < 100; ++t) {
    const Complex mu = samples::random_mu(rng);
    const WeightVector chi = samples::knr_character(samples::random_knr_weights(rng));
    for (const WeightVector* c : {&chi, &fixed}) {
      try {
        const KnrSolution sol = knr_solve(*c, mu);
        const Complex back = knr_mu(KnrParameters::make(KnrWeights::from_character(*c), sol.lambda, sol.x));
        worst = std::max(worst, std::abs(back - mu));
      } catch (const Error& e) {
        o.check(false, "mu " + fmt("%.4f", mu.real()) + fmt("%+.4fi", mu.imag()) + ": " + e.what());
      }
    }
    try {
      const auto cert = unitarize_quadruple(continuous_system(mu), fixed);
      o.check(cert.residual < 1e-8, "fixed character residual");
    } catch (const Error& e) {
      o.check(false, std::string("fixed character: ") + e.what());
    }
  }
  o.check(worst < 1e-6, "round trip " + fmt("%.3g", worst));
  o.detail = "200 round trips, worst |mu' - mu| " + fmt("%.2e", worst) + "; fixed character unitarizes all 100 S_mu";
  return o;
}

// 7. Degenerate quadruples.
Outcome degenerate_case() {
  Outcome o;
  Rng rng(1007);
  std::uniform_int_distribution<int> pick(0, 5);
  const std::array<std::pair<int, int>, 6> pairs{{{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}}};
  double worst = 0;
  int rejected = 0;
  for (int t = 0; t < 50; ++t) {
    const auto [i, j] = pairs[static_cast<std::size_t>(pick(rng))];
    const WeightVector chi = samples::random_degenerate_character(i, j, rng);
    const auto cert = degenerate_gram(chi, i, j);
    const double r = oracle::orthoscalar_residual(degenerate_system(i, j), cert.gram.matrix(), chi);
    worst = std::max({worst, r, cert.residual});

    // Stretch the merged weight onto and past the triangle boundary.
    WeightVector bad = chi;
    double rest = 0;
    for (std::size_t q = 0; q < 4; ++q)
      if (static_cast<int>(q) != i - 1 && static_cast<int>(q) != j - 1) rest += chi.tail[q];
    const double merged = chi.tail[static_cast<std::size_t>(i - 1)] + chi.tail[static_cast<std::size_t>(j - 1)];
    const double target = t % 2 == 0 ? rest : rest * 1.1;
    bad.tail[static_cast<std::size_t>(i - 1)] *= target / merged;
    bad.tail[static_cast<std::size_t>(j - 1)] *= target / merged;
    bad.head = (bad.tail[0] + bad.tail[1] + bad.tail[2] + bad.tail[3]) / 2;
    try {
      degenerate_gram(bad, i, j);
      o.check(false, "boundary character accepted");
    } catch (const Error& e) {
      o.check(e.code() == ErrorCode::InadmissibleCharacter, std::string("wrong error ") + e.what());
      ++rejected;
    }
  }
  o.check(worst < 1e-10, "residual " + fmt("%.3g", worst));
  o.detail = "50 characters, worst residual " + fmt("%.2e", worst) + ", " + std::to_string(rejected) + "/50 boundary characters rejected";
  return o;
}

// 8. Uniqueness: certificates for L and for a basis change of L under
// different seeds have the same word traces.
Outcome uniqueness() {
  Outcome o;
  Rng rng(1008);
  double worst = 0;
  int cases = 0;
  for (int t = 0; t < 20; ++t, ++cases) {
    SubspaceSystem base = continuous_system(2.0);
    WeightVector chi;
    if (t < 10) {
      base = continuous_system(samples::random_mu(rng));
      chi = samples::knr_character(samples::random_knr_weights(rng));
    } else if (t < 15) {
      const int i = 1 + t % 3, j = 4;
      base = degenerate_system(i, j);
      chi = samples::random_degenerate_character(i, j, rng);
    } else {
      const auto families = samples::discrete_families(2);
      const DimensionVector d = discrete_dimension(families[static_cast<std::size_t>(t * 7) % families.size()]);
      chi = weight_cast<double>(canonical_character(d));
      base = build_discrete_model(d, chi).system().without_gram();
    }
    const SubspaceSystem l = samples::transformed(base, random_invertible(base.ambient_dim(), rng));
    const SubspaceSystem moved = samples::transformed(l, random_invertible(l.ambient_dim(), rng));
    try {
      const auto a = unitarize_quadruple(l, chi, 11);
      const auto b = unitarize_quadruple(moved, chi, 29);
      const double gap = max_abs_difference(samples::certificate_traces(l, a), samples::certificate_traces(moved, b));
      worst = std::max(worst, gap);
      o.check(gap < 1e-8, "case " + std::to_string(t) + " traces differ by " + fmt("%.3g", gap));
    } catch (const Error& e) {
      o.check(false, "case " + std::to_string(t) + ": " + e.what());
    }
  }
  o.detail = std::to_string(cases) + " pairs, worst word-trace gap " + fmt("%.2e", worst);
  return o;
}

// 9. Bricks among operator quintuples versus the commutant of the pair.
Outcome operator_pairs() {
  Outcome o;
  Rng rng(1009);
  std::uniform_int_distribution<int> entry(-1, 1);
  int agree = 0, bricks = 0;
  for (int t = 0; t < 50; ++t) {
    const Index n = 1 + t % 3;
    Matrix a(n, n), b(n, n);
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j) a(i, j) = entry(rng);
    if (t % 5 == 0) {
      b = a * a - a;  // commutes with a
    } else if (t % 5 == 1) {
      b = Matrix::Zero(n, n);
      for (Index i = 0; i + 1 < n; ++i) b(i + 1, i) = 1;  // lower shift
    } else {
      for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) b(i, j) = entry(rng);
    }
    const bool brick = is_brick(operator_quintuple(a, b));
    const bool scalar_commutant = oracle::commutant_dimension(a, b) == 1;
    agree += brick == scalar_commutant;
    bricks += brick;
    o.check(brick == scalar_commutant, "pair " + std::to_string(t));
  }
  o.detail = std::to_string(agree) + "/50 agree (" + std::to_string(bricks) + " bricks)";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"line construction", lines_construction},
      {"Coxeter algebra", coxeter_algebra},
      {"functor pipeline", functor_pipeline},
      {"admissibility consistency", admissibility_consistency},
      {"explicit projections", knr_construction},
      {"inverse solver", inverse_solver},
      {"degenerate case", degenerate_case},
      {"uniqueness", uniqueness},
      {"operator quintuples", operator_pairs},
  };
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.first_failure = std::string("uncaught: ") + e.what();
    }
    failures += !o.pass;
    std::printf("%s %zu %s: %s%s%s\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].first, o.detail.c_str(),
                o.pass ? "" : " | first failure: ", o.pass ? "" : o.first_failure.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
