// Command-line front end: classify, unitarize, coxeter, construct, verify,
// admissible and knr. Reports are canonical JSON on stdout.
//
// Exit codes: 0 ok, 2 parse error, 3 invariant violation, 4 not a brick,
// 5 inadmissible character, 6 solver failure, 7 functor precondition.

#include "orthoscalar.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

using namespace orthoscalar;

enum Exit : int { kOk = 0, kParse = 2, kInvariant = 3, kNotBrick = 4, kInadmissible = 5, kSolver = 6, kFunctor = 7 };

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotBrick: return kNotBrick;
    case ErrorCode::InadmissibleCharacter: return kInadmissible;
    case ErrorCode::SolverFailed: return kSolver;
    case ErrorCode::Annihilated:
    case ErrorCode::NonpositiveHead:
    case ErrorCode::NonpositiveWeight:
    case ErrorCode::NotSpanning: return kFunctor;
    default: return kInvariant;
  }
}

struct Common {
  std::string input;
  std::string output;
  std::uint64_t seed = 0;
  std::optional<double> tol;

  ToleranceConfig tolerance() const {
    ToleranceConfig t;
    if (tol) t.residual = *tol;
    t.validate();
    return t;
  }
};

void add_common(CLI::App* cmd, Common& c, bool with_input) {
  if (with_input) cmd->add_option("--input,-i", c.input, "input document")->required();
  cmd->add_option("--output,-o", c.output, "write the resulting document here");
  cmd->add_option("--seed", c.seed, "seed for randomized steps");
  cmd->add_option("--tol", c.tol, "residual tolerance");
}

// Argument text that fails to parse is a usage problem, not an invariant.
template <class F>
auto parse_arg(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
}

RationalWeights parse_character_arg(const std::string& text) {
  return parse_arg([&] { return parse_weights(text); });
}

DimensionVector parse_dimension_arg(const std::string& text) {
  const RationalWeights w = parse_character_arg(text);
  const auto to_int = [](const Rational& r) {
    if (denominator(r) != 1) throw ParseError("dimension entries must be integers");
    return static_cast<std::int64_t>(numerator(r));
  };
  DimensionVector d{to_int(w.head), {}};
  for (const auto& v : w.tail) d.tail.push_back(to_int(v));
  return d;
}

std::vector<double> parse_list_arg(const std::string& text) {
  std::vector<double> out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = text.find(',', start);
    const std::string item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    out.push_back(parse_arg([&] { return static_cast<double>(parse_rational(item)); }));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

Complex parse_complex_arg(const std::string& text) {
  const auto v = parse_list_arg(text);
  if (v.size() == 1) return {v[0], 0.0};
  if (v.size() != 2) throw ParseError("complex value must be 're' or 're,im'");
  return {v[0], v[1]};
}

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json dimension_json(const DimensionVector& d) { return Json{{"head", d.head}, {"tail", d.tail}}; }

void print(const Json& report) { std::cout << to_canonical_text(report); }

// Writes the document to --output when given, otherwise embeds it in the report.
void emit_document(const Common& c, const SystemDocument& doc, Json report) {
  if (c.output.empty()) {
    report["document"] = to_json(doc);
  } else {
    save_document(c.output, doc);
    report["output"] = c.output;
  }
  print(report);
}

int cmd_classify(const Common& c) {
  const SystemDocument doc = load_document(c.input);
  const SubspaceSystem& sys = doc.system;
  const DimensionVector d = dimension_vector(sys);
  Json report;
  report["dimension"] = dimension_json(d);
  report["brick"] = is_brick(sys);
  report["indecomposable"] = to_string(is_indecomposable(sys, 16, c.seed));
  if (sys.count() == 4) {
    const RootClass rc = classify_root(d);
    report["tits"] = rc.tits_value;
    report["def"] = def_form(d);
    report["root_class"] = to_string(rc.tag);
    report["minimal"] = rc.minimal;
    if (const auto family = recognize_discrete(d)) {
      report["family"] = Json{{"kind", family->kind == FamilyKind::D4 ? "D4" : "D0"},
                              {"variant", family->variant},
                              {"size", family->size_param},
                              {"sign", family->label_sign}};
    }
    if (d == imaginary_root()) {
      if (const auto pair = coincident_pair(sys)) {
        report["degenerate_pair"] = Json::array({pair->first, pair->second});
      } else if (const auto mu = continuous_parameter(sys)) {
        report["mu"] = complex_json(*mu);
      }
    }
  }
  print(report);
  return kOk;
}

struct UnitarizeArgs {
  std::string character;
  bool automatic = false;
};

// Exact admissibility check for the rational character; empty when admissible.
std::optional<AdmissibilityVerdict> rejected(const SubspaceSystem& sys, const RationalWeights& chi) {
  const DimensionVector d = dimension_vector(sys);
  AdmissibilityVerdict v;
  if (sys.count() == 4 && d == imaginary_root()) {
    v = admissible_continuous(chi, coincident_pair(sys));
  } else if (sys.count() == 4 && recognize_discrete(d)) {
    v = admissible_discrete(d, chi);
  } else {
    v = admissible_small(d, chi);
  }
  if (v.admissible) return std::nullopt;
  return v;
}

int cmd_unitarize(const Common& c, const UnitarizeArgs& args) {
  const ToleranceConfig tol = c.tolerance();
  const SubspaceSystem sys = load_document(c.input, tol).system.without_gram();
  if (args.automatic == !args.character.empty()) throw ParseError("give exactly one of --character and --auto");
  const bool lines = std::all_of(sys.subspaces().begin(), sys.subspaces().end(), [](const Matrix& b) { return b.cols() == 1; });

  OrthoscalarCertificate cert{GramMatrix::identity(1), {}, 0.0};
  if (args.automatic && lines) {
    cert = unitarize_lines(sys, tol);
  } else {
    RationalWeights chi;
    if (args.automatic) {
      const DimensionVector d = dimension_vector(sys);
      if (sys.count() != 4 || !recognize_discrete(d)) throw Error(ErrorCode::UnknownShape, "no automatic character for " + to_string(d));
      chi = canonical_character(d);
    } else {
      chi = parse_character_arg(args.character);
    }
    if (chi.tail.size() != sys.count()) throw Error(ErrorCode::ShapeMismatch, "character length differs from subspace count");
    if (const auto verdict = rejected(sys, chi)) {
      print(Json{{"admissible", false}, {"failed_conditions", verdict->failed_conditions}});
      return kInadmissible;
    }
    const WeightVector w = weight_cast<double>(chi);
    cert = sys.count() == 4 ? unitarize_quadruple(sys, w, c.seed, tol) : unitarize_small(sys, w, c.seed, tol);
  }
  const SystemDocument doc{sys.with_gram(cert.gram), cert.character, cert.residual};
  emit_document(c, doc, Json{{"residual", cert.residual}, {"character", to_json(cert.character)}, {"accepted", cert.accepted(tol)}});
  return kOk;
}

UnitarizedSystem load_certificate(const Common& c, const ToleranceConfig& tol) {
  const SystemDocument doc = load_document(c.input, tol);
  if (!doc.system.gram() || !doc.character) throw ParseError("document needs a gram and a character");
  return UnitarizedSystem::certify(doc.system, *doc.character, tol);
}

Json trace_digest(const UnitarizedSystem& s) {
  const auto projections = s.projections();
  Json out = Json::array();
  for (Complex z : word_trace_invariants(std::span<const Matrix>(projections), 3)) out.push_back(complex_json(z));
  return out;
}

int cmd_coxeter(const Common& c, const std::string& word_text) {
  const ToleranceConfig tol = c.tolerance();
  const UnitarizedSystem input = load_certificate(c, tol);
  const CoxeterWord word = parse_arg([&] { return parse_functor_word(word_text); });
  const WeightVector predicted = apply_word(dual_word(word), input.character());
  const UnitarizedSystem out = apply_functor_word(input, word, tol);
  const SystemDocument doc{out.system(), out.character(), out.residual()};
  emit_document(c, doc,
                Json{{"word", to_string(word)},
                     {"predicted_character", to_json(predicted)},
                     {"character", to_json(out.character())},
                     {"dimension", dimension_json(dimension_vector(out.system()))},
                     {"residual", out.residual()},
                     {"word_traces", trace_digest(out)}});
  return kOk;
}

struct ConstructArgs {
  std::string family;
  int index = 4;
  std::optional<std::int64_t> m;
  std::optional<std::int64_t> size;
  int sign = -1;
  bool even = false;
  std::string mu;
  std::vector<int> degenerate;
  std::string character;
};

DiscreteFamily family_from(const ConstructArgs& a) {
  DiscreteFamily f;
  if (a.family == "D4") {
    f.kind = FamilyKind::D4;
    f.variant = a.index;
  } else if (a.family == "D0") {
    f.kind = FamilyKind::D0;
    f.variant = 0;
  } else {
    throw ParseError("--family must be D4 or D0");
  }
  f.label_sign = a.sign;
  if (a.size) {
    f.size_param = *a.size;
  } else if (a.m) {
    const bool even = f.kind == FamilyKind::D4 ? a.even : a.sign == 2;
    f.size_param = even ? 2 * *a.m : 2 * *a.m + 1;
  } else {
    throw ParseError("give --m or --size");
  }
  return f;
}

int cmd_construct(const Common& c, const ConstructArgs& a) {
  const ToleranceConfig tol = c.tolerance();
  const int chosen = static_cast<int>(!a.family.empty()) + static_cast<int>(!a.mu.empty()) + static_cast<int>(!a.degenerate.empty());
  if (chosen != 1) throw ParseError("give exactly one of --family, --mu and --degenerate");

  if (!a.mu.empty()) {
    const SubspaceSystem sys = continuous_system(parse_complex_arg(a.mu));
    emit_document(c, SystemDocument{sys, std::nullopt, std::nullopt}, Json{{"dimension", dimension_json(dimension_vector(sys))}});
    return kOk;
  }
  if (!a.degenerate.empty()) {
    const SubspaceSystem sys = degenerate_system(a.degenerate[0], a.degenerate[1]);
    emit_document(c, SystemDocument{sys, std::nullopt, std::nullopt}, Json{{"dimension", dimension_json(dimension_vector(sys))}});
    return kOk;
  }
  const DimensionVector d = discrete_dimension(family_from(a));
  const RationalWeights chi = a.character.empty() ? canonical_character(d) : parse_character_arg(a.character);
  if (const auto v = [&] { return admissible_discrete(d, chi); }(); !v.admissible) {
    print(Json{{"admissible", false}, {"failed_conditions", v.failed_conditions}});
    return kInadmissible;
  }
  const UnitarizedSystem model = build_discrete_model(d, weight_cast<double>(chi), tol);
  const DiscreteChain chain = discrete_chain(d);
  emit_document(c, SystemDocument{model.system(), model.character(), model.residual()},
                Json{{"dimension", dimension_json(d)},
                     {"functor_word", to_string(chain.word)},
                     {"base_position", chain.position},
                     {"residual", model.residual()}});
  return kOk;
}

int cmd_verify(const Common& c) {
  const ToleranceConfig tol = c.tolerance();
  const SystemDocument doc = load_document(c.input, tol);
  if (!doc.system.gram() || !doc.character) throw ParseError("document needs a gram and a character");
  const auto cert = verify_orthoscalar(doc.system, *doc.system.gram(), *doc.character, tol);
  print(Json{{"residual", cert.residual}, {"tolerance", tol.residual}, {"accepted", cert.accepted(tol)}});
  return cert.accepted(tol) ? kOk : kInvariant;
}

int cmd_admissible(const std::string& dimension, const std::string& character, const std::vector<int>& degenerate) {
  const DimensionVector d = parse_dimension_arg(dimension);
  const RationalWeights chi = parse_character_arg(character);
  AdmissibilityVerdict v;
  std::string kind;
  if (d == imaginary_root()) {
    std::optional<std::pair<int, int>> pair;
    if (!degenerate.empty()) pair = std::pair{degenerate[0], degenerate[1]};
    v = admissible_continuous(chi, pair);
    kind = pair ? "degenerate" : "continuous";
  } else if (d.tail.size() == 4 && recognize_discrete(d)) {
    v = admissible_discrete(d, chi);
    kind = "discrete";
  } else {
    v = admissible_small(d, chi);
    kind = "small";
  }
  print(Json{{"admissible", v.admissible}, {"failed_conditions", v.failed_conditions}, {"kind", kind}});
  return v.admissible ? kOk : kInadmissible;
}

struct KnrArgs {
  std::string weights;
  std::optional<double> lambda;
  double x = 0.0;
  std::string solve_mu;
  int samples = 0;
};

int cmd_knr(const KnrArgs& a) {
  auto values = parse_list_arg(a.weights);
  if (values.size() == 5) values.erase(values.begin());
  if (values.size() != 4) throw ParseError("weights must list a1,a2,a3,a4 (optionally preceded by a0)");
  const KnrWeights w = KnrWeights::from_tail({values[0], values[1], values[2], values[3]});
  const auto normalized = w.original();
  Json report{{"weights", normalized}, {"A", w.A()}, {"B", w.B()}, {"C", w.C()}, {"D", w.D()},
              {"lambda_interval", Json::array({w.lambda_lower(), w.lambda_upper()})}};

  if (!a.solve_mu.empty()) {
    if (a.lambda) throw ParseError("--solve-mu and --lambda are exclusive");
    const Complex mu = parse_complex_arg(a.solve_mu);
    const WeightVector chi{1.0, {normalized.begin(), normalized.end()}};
    const KnrSolution sol = knr_solve(chi, mu);
    const Complex back = knr_mu(KnrParameters::make(w, sol.lambda, sol.x));
    report["lambda"] = sol.lambda;
    report["x"] = sol.x;
    report["mu"] = complex_json(back);
    report["error"] = std::abs(back - mu);
    print(report);
    return kOk;
  }
  if (!a.lambda) throw ParseError("give --lambda (with --x) or --solve-mu");
  const KnrParameters p = KnrParameters::make(w, *a.lambda, a.x);
  const auto projections = knr_projections(p);
  Json mats = Json::array();
  for (const auto& m : projections) mats.push_back(to_json(m));
  report["lambda"] = p.lambda;
  report["x"] = p.x;
  report["projections"] = std::move(mats);
  report["residual"] = residual_orthoscalar(std::span<const Matrix>(projections.data(), projections.size()),
                                            WeightVector{1.0, {normalized.begin(), normalized.end()}});
  try {
    report["mu"] = complex_json(knr_mu(p));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::DegenerateConfiguration) throw;
    report["mu"] = nullptr;
  }
  const Ellipse e = knr_ellipse(w, p.lambda);
  report["ellipse"] = Json{{"center", complex_json(e.center)}, {"semi_real", e.semi_real}, {"semi_imag", e.semi_imag}};
  if (a.samples > 0) {
    Json table = Json::array();
    for (int k = 0; k < a.samples; ++k) {
      const double x = 2 * std::numbers::pi * k / a.samples;
      table.push_back(Json::array({x, e.at(x).real(), e.at(x).imag()}));
    }
    report["ellipse_samples"] = std::move(table);
  }
  print(report);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Subspace systems: classification, Coxeter functors and unitarization"};
  app.require_subcommand(1);

  Common common;
  UnitarizeArgs unitarize_args;
  std::string word;
  ConstructArgs construct_args;
  std::string adm_dimension, adm_character;
  std::vector<int> adm_degenerate;
  KnrArgs knr_args;

  auto* classify = app.add_subcommand("classify", "dimension, root class, brick and indecomposability report");
  add_common(classify, common, true);

  auto* unitarize = app.add_subcommand("unitarize", "find a Gram matrix making the system orthoscalar");
  add_common(unitarize, common, true);
  unitarize->add_option("--character", unitarize_args.character, "a0,a1,...,an");
  unitarize->add_flag("--auto", unitarize_args.automatic, "choose the character automatically");

  auto* coxeter = app.add_subcommand("coxeter", "apply a functor word over {o, b, +, -} to a certificate");
  add_common(coxeter, common, true);
  coxeter->add_option("--word", word, "functor word, applied left to right")->required();

  auto* construct = app.add_subcommand("construct", "build a model system");
  add_common(construct, common, false);
  construct->add_option("--family", construct_args.family, "D4 or D0");
  construct->add_option("--i", construct_args.index, "distinguished position of a D4 family (1..4)");
  construct->add_option("--m", construct_args.m, "family parameter m");
  construct->add_option("--size", construct_args.size, "first label argument, overrides --m");
  construct->add_option("--sign", construct_args.sign, "label sign: -1, 1 for D4; -2, 2 for D0");
  construct->add_flag("--even", construct_args.even, "D4 size 2m instead of 2m+1");
  construct->add_option("--mu", construct_args.mu, "re,im of the continuous parameter");
  construct->add_option("--degenerate", construct_args.degenerate, "coinciding positions i j")->expected(2);
  construct->add_option("--character", construct_args.character, "character for a family model");

  auto* verify = app.add_subcommand("verify", "measure the orthoscalar residual of a document");
  add_common(verify, common, true);

  auto* admissible = app.add_subcommand("admissible", "check a character against a dimension vector");
  admissible->add_option("dimension", adm_dimension, "d0,d1,...,dn")->required();
  admissible->add_option("character", adm_character, "a0,a1,...,an")->required();
  admissible->add_option("--degenerate", adm_degenerate, "coinciding positions i j")->expected(2);

  auto* knr = app.add_subcommand("knr", "explicit rank-one projection quadruples");
  knr->add_option("weights", knr_args.weights, "a1,a2,a3,a4")->required();
  knr->add_option("--lambda", knr_args.lambda, "lambda inside (A, min(B, D))");
  knr->add_option("--x", knr_args.x, "phase in radians");
  knr->add_option("--solve-mu", knr_args.solve_mu, "re,im: find (lambda, x) for this mu");
  knr->add_option("--samples", knr_args.samples, "emit this many ellipse samples");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kParse;
  }

  try {
    if (*classify) return cmd_classify(common);
    if (*unitarize) return cmd_unitarize(common, unitarize_args);
    if (*coxeter) return cmd_coxeter(common, word);
    if (*construct) return cmd_construct(common, construct_args);
    if (*verify) return cmd_verify(common);
    if (*admissible) return cmd_admissible(adm_dimension, adm_character, adm_degenerate);
    if (*knr) return cmd_knr(knr_args);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const Error& e) {
    std::cerr << to_string(e.code()) << ": " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvariant;
  }
  return kOk;
}
