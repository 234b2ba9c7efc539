#include "ritzcoords/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>

#include <CLI11.hpp>

#include "ritzcoords/arrow.hpp"
#include "ritzcoords/control.hpp"
#include "ritzcoords/coords.hpp"
#include "ritzcoords/fiber.hpp"
#include "ritzcoords/gzflow.hpp"
#include "ritzcoords/io.hpp"
#include "ritzcoords/poisson.hpp"

namespace ritzcoords::cli {

namespace {

using io::Json;

constexpr double kConservationRel = 1e-7;
constexpr double kConjugationRel = 1e-7;
constexpr int kMaxPoissonOrder = 5;

struct Options {
  Tolerances tol;
  std::string input;
  std::string output;

  std::optional<int> m, k, j;
  std::string q;

  bool transpose = false;
  std::string diag;

  std::string row, col, complete;
  bool regular = false;

  int n = 0;
};

struct Result {
  Json doc;
  int status = kExitOk;
};

Json read_document(const Options& opt, std::istream& in) {
  try {
    if (opt.input.empty() || opt.input == "-") return Json::parse(in);
    std::ifstream file(opt.input);
    if (!file) throw io::ParseError("cannot open input file '" + opt.input + "'");
    return Json::parse(file);
  } catch (const Json::parse_error& e) {
    throw io::ParseError(std::string("malformed JSON input: ") + e.what());
  }
}

ComplexVector to_vector(const ComplexList& values) {
  return Eigen::Map<const ComplexVector>(values.data(), static_cast<Eigen::Index>(values.size()));
}

Json bool_array(const std::vector<bool>& flags) {
  Json out = Json::array();
  for (bool f : flags) out.push_back(f);
  return out;
}

// "re", "re,im" or a literal such as "1-2i".
Complex parse_time(const std::string& text) {
  const ComplexList parts = io::parse_complex_list(text);
  if (parts.size() == 1) return parts[0];
  if (parts.size() == 2 && parts[0].imag() == 0.0 && parts[1].imag() == 0.0)
    return {parts[0].real(), parts[1].real()};
  throw io::ParseError("--q expects 're' or 're,im'");
}

// Largest entrywise difference between two coordinate sets, relative to the
// largest b entry (or 1).
double coords_residual(const FiberCoords& a, const FiberCoords& b) {
  double diff = 0.0;
  double size = 1.0;
  for (std::size_t m = 0; m < a.b.size(); ++m) {
    diff = std::max(diff, (a.b[m] - b.b[m]).cwiseAbs().maxCoeff());
    size = std::max(size, a.b[m].cwiseAbs().maxCoeff());
  }
  return diff / size;
}

Result cmd_ritz(const Json& doc, const Options& opt) {
  const ComplexMatrix x = io::matrix_from_json(doc);
  const RitzData r = ritz_values(x, opt.tol);
  return {Json{{"n", r.n()}, {"ritz", io::ritz_to_json(r)}}};
}

Result cmd_check(const Json& doc, const Options& opt) {
  Json report;
  RitzData r;
  if (doc.is_object() && doc.contains("entries")) {
    const ComplexMatrix x = io::matrix_from_json(doc);
    r = ritz_values(x, opt.tol);
    report["strongly_regular"] = strong_regularity_check(x, opt.tol);
  } else if (doc.is_object() && doc.contains("ritz")) {
    r = io::ritz_from_json(doc.at("ritz"));
    report["strongly_regular"] = nullptr;
  } else {
    throw io::ParseError("check expects a matrix or a Ritz document");
  }
  const GenericityReport g = genericity_report(r, opt.tol);
  report["n"] = r.n();
  report["generic"] = g.generic;
  report["g1"] = bool_array(g.g1);
  report["g2"] = bool_array(g.g2);
  report["ill_conditioned"] = g.ill_conditioned;
  if (auto failure = g.first_failure())
    report["first_failure"] = *failure;
  else
    report["first_failure"] = nullptr;
  report["diagonal"] = io::complex_list_to_json(diagonal_from_ritz(r));
  return {std::move(report)};
}

Result cmd_hess(const Json& doc, const Options&) {
  if (!doc.is_object() || !doc.contains("ritz")) throw io::ParseError("missing key \"ritz\"");
  const RitzData r = io::ritz_from_json(doc.at("ritz"));
  return {io::matrix_to_json(hessenberg_representative(r))};
}

ExtractedCoords extract_from_document(const Json& doc, const Options& opt) {
  const ComplexMatrix x = io::matrix_from_json(doc);
  if (doc.contains("ritz")) return extract_coords(x, io::ritz_from_json(doc.at("ritz")), opt.tol);
  return extract_coords(x, opt.tol);
}

Result cmd_coords(const Json& doc, const Options& opt) {
  const ExtractedCoords ex = extract_from_document(doc, opt);
  Json out = io::coords_to_json(ex.coords);
  Json c = Json::array();
  for (const auto& cm : ex.c) c.push_back(io::complex_vector_to_json(cm));
  out["c"] = std::move(c);
  out["ill_conditioned"] = ex.report.ill_conditioned;
  return {std::move(out)};
}

Result cmd_reconstruct(const Json& doc, const Options& opt) {
  const FiberCoords fc = io::coords_from_json(doc);
  fc.validate(opt.tol);
  return {io::matrix_to_json(reconstruct(fc, opt.tol))};
}

Result cmd_flow(const Json& doc, const Options& opt) {
  const bool by_slot = opt.j.has_value();
  const bool by_power = opt.m.has_value() || opt.k.has_value();
  if (by_slot == by_power) throw io::ParseError("flow needs either --j or both --m and --k");
  if (by_power && !(opt.m && opt.k)) throw io::ParseError("flow needs both --m and --k");
  if (opt.q.empty()) throw io::ParseError("flow needs --q");
  const Complex q = parse_time(opt.q);

  const ComplexMatrix x = io::matrix_from_json(doc);
  require_finite(x, "flow");
  const ComplexMatrix y = by_slot ? eigen_flow(x, *opt.j, q, opt.tol)
                                  : gz_flow(x, FlowParam{*opt.m, *opt.k, q});

  const RitzData before = ritz_values(x, opt.tol);
  const RitzData after = ritz_values(y, opt.tol);
  const double deviation = ritz_distance(before, after);
  const double bound = kConservationRel * before.scale();
  Json out = io::matrix_to_json(y);
  out["conservation"] = {{"max_ritz_deviation", deviation},
                         {"tolerance", bound},
                         {"preserved", deviation <= bound}};
  return {std::move(out), deviation <= bound ? kExitOk : kExitNumerical};
}

Result cmd_conj(const Json& doc, const Options& opt) {
  if (opt.transpose == !opt.diag.empty()) throw io::ParseError("conj needs exactly one of --transpose, --diag");

  FiberCoords fc;
  ComplexMatrix x;
  if (doc.is_object() && doc.contains("entries")) {
    x = io::matrix_from_json(doc);
    fc = extract_from_document(doc, opt).coords;
  } else {
    fc = io::coords_from_json(doc);
    fc.validate(opt.tol);
    x = reconstruct(fc, opt.tol);
  }

  FiberCoords image;
  ComplexMatrix conjugated;
  if (opt.transpose) {
    image = transpose_coords(fc, opt.tol);
    conjugated = x.transpose();
  } else {
    const ComplexList d = io::parse_complex_list(opt.diag);
    if (static_cast<int>(d.size()) != fc.n())
      throw io::ParseError("--diag needs " + std::to_string(fc.n()) + " entries");
    image = diagonal_similarity_coords(fc, d);
    const ComplexVector dv = to_vector(d);
    conjugated = dv.asDiagonal() * x * dv.cwiseInverse().asDiagonal();
  }
  const FiberCoords direct = extract_coords(conjugated, image.ritz, opt.tol).coords;
  const double residual = coords_residual(image, direct);

  Json out = io::coords_to_json(image);
  out["verification"] = {{"residual", residual},
                         {"tolerance", kConjugationRel},
                         {"passed", residual <= kConjugationRel}};
  return {std::move(out), residual <= kConjugationRel ? kExitOk : kExitNumerical};
}

Result cmd_control(const Json& doc, const Options& opt) {
  if (opt.row.empty() && opt.col.empty() && !opt.regular && opt.complete.empty())
    throw io::ParseError("control needs at least one of --row, --col, --regular, --complete");
  if (!opt.complete.empty() && opt.row.empty()) throw io::ParseError("--complete needs --row");

  const ComplexMatrix B = io::matrix_from_json(doc);
  const int m = static_cast<int>(B.rows());
  auto read_vector = [m](const std::string& text, const char* flag) {
    const ComplexList v = io::parse_complex_list(text);
    if (static_cast<int>(v.size()) != m)
      throw io::ParseError(std::string(flag) + " needs " + std::to_string(m) + " entries");
    return to_vector(v);
  };

  Json out{{"m", m}};
  std::optional<ComplexVector> row, col;
  if (!opt.row.empty()) {
    row = read_vector(opt.row, "--row");
    out["observable"] = observable(B, *row, opt.tol);
  }
  if (!opt.col.empty()) {
    col = read_vector(opt.col, "--col");
    out["controllable"] = controllable(B, *col, opt.tol);
  }
  if (row && col) {
    SISOSystem sys{B, *row, *col, 0.0};
    out["hankel_rank"] = numeric_rank(markov_hankel(sys, m), opt.tol);
  }
  if (opt.regular) out["regular"] = is_regular(B, opt.tol);
  if (!opt.complete.empty()) {
    const ComplexList coeffs = io::parse_complex_list(opt.complete);
    if (static_cast<int>(coeffs.size()) != m + 1)
      throw io::ParseError("--complete needs the " + std::to_string(m + 1) +
                           " coefficients c0..c" + std::to_string(m));
    const Completion done = solve_unique_completion(B, *row, MonicPoly{coeffs}, opt.tol);
    out["completion"] = {{"c", io::complex_vector_to_json(done.c)},
                         {"delta", io::complex_to_json(done.delta)}};
  }
  return {std::move(out)};
}

Json contribution_list(const std::vector<BracketContribution>& terms) {
  Json out = Json::array();
  for (const auto& t : terms)
    out.push_back({{"i", t.i}, {"j", t.j}, {"k", t.k}, {"l", t.l}, {"value", t.value.to_string()}});
  return out;
}

Result cmd_poisson(const Options& opt) {
  if (opt.n < 1 || opt.n > kMaxPoissonOrder)
    throw io::ParseError("poisson --n must lie in 1.." + std::to_string(kMaxPoissonOrder));
  const int n = opt.n;

  struct Generator {
    int m, k;
    SparsePoly poly;
  };
  std::vector<Generator> gens;
  for (int m = 1; m <= n; ++m)
    for (int k = 1; k <= m; ++k) gens.push_back({m, k, gz_generator(n, m, k)});

  Json generators = Json::array();
  for (const auto& g : gens) generators.push_back({{"m", g.m}, {"k", g.k}, {"terms", g.poly.term_count()}});

  Json failures = Json::array();
  int pairs = 0;
  for (std::size_t a = 0; a < gens.size(); ++a) {
    for (std::size_t b = a + 1; b < gens.size(); ++b) {
      ++pairs;
      const SparsePoly bracket = poisson_bracket(gens[a].poly, gens[b].poly);
      if (!bracket.is_zero())
        failures.push_back({{"f", {gens[a].m, gens[a].k}},
                            {"g", {gens[b].m, gens[b].k}},
                            {"bracket", bracket.to_string()}});
    }
  }

  Json out{{"n", n},
           {"generators", std::move(generators)},
           {"pairs", pairs},
           {"commute", failures.empty()},
           {"nonzero", failures}};
  if (n >= 3) {
    const SparsePoly f = gz_generator(n, 2, 1);
    const SparsePoly g = gz_generator(n, 3, 2);
    out["example"] = {{"f", f.to_string()},
                      {"g", g.to_string()},
                      {"contributions", contribution_list(bracket_contributions(f, g))},
                      {"bracket", poisson_bracket(f, g).to_string()}};
  }
  return {std::move(out), failures.empty() ? kExitOk : kExitNumerical};
}

void emit(const Json& doc, const Options& opt, std::ostream& out) {
  const std::string text = io::format_document(doc);
  if (opt.output.empty() || opt.output == "-") {
    out << text;
    return;
  }
  std::ofstream file(opt.output);
  if (!file) throw io::ParseError("cannot open output file '" + opt.output + "'");
  file << text;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  Options opt;
  CLI::App app{"Ritz-value coordinates on complex square matrices", "ritzcoords"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--tol-eig", opt.tol.eig_rel, "Relative eigenvalue residual tolerance");
  app.add_option("--tol-coincide", opt.tol.coincide_rel, "Relative eigenvalue coincidence threshold");
  app.add_option("--tol-rank", opt.tol.rank_rel, "Relative singular value cut-off");
  app.add_option("--input", opt.input, "Input JSON document (default: standard input)");
  app.add_option("--output", opt.output, "Output JSON document (default: standard output)");

  auto* ritz = app.add_subcommand("ritz", "Ritz values of every leading submatrix");
  auto* check = app.add_subcommand("check", "Genericity and strong-regularity report");
  auto* hess = app.add_subcommand("hess", "Unit upper Hessenberg matrix with given Ritz values");
  auto* coords = app.add_subcommand("coords", "Coordinates (ritz, b) of a generic matrix");
  auto* recon = app.add_subcommand("reconstruct", "Matrix from coordinates (ritz, b)");

  auto* flow = app.add_subcommand("flow", "Gelfand-Zeitlin flow of a matrix");
  flow->add_option("--m", opt.m, "Level of tr(x_m^k)");
  flow->add_option("--k", opt.k, "Power of tr(x_m^k)");
  flow->add_option("--j", opt.j, "Eigenvalue slot C(m,2)+l");
  flow->add_option("--q", opt.q, "Complex time: 're', 're,im' or '1+2i' (use --q=-1 for negatives)");

  auto* conj = app.add_subcommand("conj", "Coordinates after transposition or diagonal similarity");
  conj->add_flag("--transpose", opt.transpose, "Coordinates of x^T");
  conj->add_option("--diag", opt.diag, "Coordinates of D x D^-1 for D = diag(d1,...,dn)");

  auto* control = app.add_subcommand("control", "Bordering diagnostics for the matrix B");
  control->add_option("--row", opt.row, "Observation row b (comma-separated)");
  control->add_option("--col", opt.col, "Input column c (comma-separated)");
  control->add_flag("--regular", opt.regular, "Report whether B is regular");
  control->add_option("--complete", opt.complete,
                      "Target characteristic polynomial coefficients c0,...,cm");

  auto* poisson = app.add_subcommand("poisson", "Symbolic commutativity of the generators tr(x_m^k)");
  poisson->add_option("--n", opt.n, "Matrix order")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitArgument;
  }

  try {
    opt.tol.validate();
    Result result;
    if (poisson->parsed()) {
      result = cmd_poisson(opt);
    } else {
      const Json doc = read_document(opt, in);
      if (ritz->parsed()) result = cmd_ritz(doc, opt);
      else if (check->parsed()) result = cmd_check(doc, opt);
      else if (hess->parsed()) result = cmd_hess(doc, opt);
      else if (coords->parsed()) result = cmd_coords(doc, opt);
      else if (recon->parsed()) result = cmd_reconstruct(doc, opt);
      else if (flow->parsed()) result = cmd_flow(doc, opt);
      else if (conj->parsed()) result = cmd_conj(doc, opt);
      else result = cmd_control(doc, opt);
    }
    emit(result.doc, opt, out);
    if (result.status != kExitOk) err << "ritzcoords: verification failed\n";
    return result.status;
  } catch (const std::invalid_argument& e) {
    err << "ritzcoords: argument error: " << e.what() << "\n";
    return kExitArgument;
  } catch (const GenericityError& e) {
    err << "ritzcoords: genericity violation (" << e.condition() << "): " << e.what() << "\n";
    return kExitGenericity;
  } catch (const std::exception& e) {
    err << "ritzcoords: numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
}

}  // namespace ritzcoords::cli
