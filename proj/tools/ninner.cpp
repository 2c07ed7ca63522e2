// Command-line front end: evaluate products on vector files, run the
// randomized identity suites, verify Dodgson identities on matrix files and
// fit regressions on CSV datasets. Exit codes: 0 success, 1 unexpected
// verification result, 2 parse failure, 3 dimension mismatch, 4 collinear
// predictors.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ninner/ninner.hpp"

namespace {

using Json = nlohmann::ordered_json;

struct GlobalOpts {
  std::string mode = "exact";
  double tol = 1e-9;
  bool json = false;
  std::uint64_t seed = 0;
};

struct ProductOpts {
  std::string kind;
  std::string file;
  int x = 0;
  int y = -1;  // -1: same as x
  std::string cond;
  bool swap_roles = false;
};

struct VerifyOpts {
  std::string suite = "all";
  int n = 3;
  int dim = 0;  // 0: derived from n
  int trials = 200;
};

struct RegressOpts {
  std::string csv;
  std::string xcol = "x";
  std::string ycol = "y";
  std::string zcol = "z";
};

struct DodgsonOpts {
  std::string file;
};

template <class S>
void put_scalar(Json& j, const std::string& key, const S& v) {
  if constexpr (ninner::ScalarTraits<S>::is_exact) {
    j[key] = ninner::ScalarTraits<S>::to_string(v);
  } else {
    j[key] = v;
  }
}

std::vector<std::size_t> parse_index_list(const std::string& s) {
  std::vector<std::size_t> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == ',') {
      std::string tok = s.substr(start, i - start);
      start = i + 1;
      if (tok.empty()) throw ninner::ParseError("empty index in '" + s + "'");
      char* end = nullptr;
      long v = std::strtol(tok.c_str(), &end, 10);
      if (end != tok.c_str() + tok.size() || v < 0)
        throw ninner::ParseError("invalid index '" + tok + "'");
      out.push_back(static_cast<std::size_t>(v));
    }
  }
  return out;
}

void emit(const GlobalOpts& g, const Json& j, const std::string& text) {
  if (g.json)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
}

template <class S>
int cmd_product(const GlobalOpts& g, const ProductOpts& opt) {
  using Traits = ninner::ScalarTraits<S>;
  auto vectors = ninner::read_vector_file<S>(opt.file);
  auto need = [&](std::size_t idx) -> const ninner::Vector<S>& {
    if (idx >= vectors.size())
      throw ninner::ParseError("vector index " + std::to_string(idx) +
                               " out of range (file has " + std::to_string(vectors.size()) +
                               " vectors)");
    return vectors[idx];
  };
  const std::size_t xi = static_cast<std::size_t>(opt.x);
  const std::size_t yi = opt.y < 0 ? xi : static_cast<std::size_t>(opt.y);
  auto cond_idx = parse_index_list(opt.cond);
  if (cond_idx.empty()) throw ninner::ParseError("--cond needs at least one index");

  ninner::ConditionedPair<S> p;
  p.x = need(xi);
  p.y = need(yi);
  for (std::size_t i : cond_idx) p.conditioners.push_back(need(i));

  if (opt.swap_roles) {
    // (x,x|...,c_last) becomes (c_last,c_last|...,x): the pair swaps with the
    // innermost conditioner, the written-order tail.
    if (!(p.x == p.y))
      throw ninner::ParseError("--swap-roles needs --x and --y to name the same vector");
    ninner::Vector<S> innermost = p.conditioners.back();
    p.conditioners.back() = p.x;
    p.x = innermost;
    p.y = innermost;
  }

  const std::size_t dim = p.x.dim();
  const ninner::InnerSpace<S> space = ninner::InnerSpace<S>::euclidean(dim);

  Json j;
  j["command"] = "product";
  j["mode"] = Traits::mode_name();
  j["kind"] = opt.kind;
  j["n"] = p.conditioners.size() + 1;
  std::string text;
  if (opt.kind == "standard") {
    S value = ninner::standard_n_inner(space, p);
    put_scalar(j, "value", value);
    text = "standard n-inner product (n=" + std::to_string(p.conditioners.size() + 1) +
           "): " + Traits::to_string(value) + "\n";
  } else {
    ninner::ProductReport<S> r = ninner::representation_report(space, p, g.tol);
    put_scalar(j, "value", r.value);
    put_scalar(j, "e_factor", r.e_factor);
    put_scalar(j, "standard_value", r.standard_value);
    put_scalar(j, "residual", r.residual());
    text = "iterated 2-inner product (n=" + std::to_string(p.conditioners.size() + 1) +
           ")\n  value:          " + Traits::to_string(r.value) +
           "\n  E factor:       " + Traits::to_string(r.e_factor) +
           "\n  standard value: " + Traits::to_string(r.standard_value) +
           "\n  residual:       " + Traits::to_string(r.residual()) + "\n";
  }
  emit(g, j, text);
  return 0;
}

Json suite_reports_json(const std::vector<ninner::SuiteReport>& reports) {
  Json arr = Json::array();
  for (const auto& rep : reports) {
    Json jr;
    jr["suite"] = rep.suite;
    jr["ok"] = rep.ok();
    Json checks = Json::array();
    for (const auto& c : rep.checks) {
      Json jc;
      jc["name"] = c.name;
      jc["trials"] = c.trials;
      jc["failures"] = c.failures;
      jc["expected_fail"] = c.expected_fail;
      jc["ok"] = c.ok();
      jc["witness"] = c.witness;
      checks.push_back(jc);
    }
    jr["checks"] = checks;
    arr.push_back(jr);
  }
  return arr;
}

std::string suite_reports_text(const std::vector<ninner::SuiteReport>& reports) {
  std::string text;
  for (const auto& rep : reports) {
    text += "suite " + rep.suite + (rep.ok() ? "  [ok]\n" : "  [FAILED]\n");
    for (const auto& c : rep.checks) {
      text += std::string("  ") + (c.ok() ? "ok   " : "FAIL ") + c.name + ": " +
              std::to_string(c.trials) + " trials, " + std::to_string(c.failures) +
              " failures";
      if (c.expected_fail) text += " (violation expected)";
      text += "\n";
      if (!c.witness.empty()) text += "       witness: " + c.witness + "\n";
    }
  }
  return text;
}

template <class S>
int cmd_verify(const GlobalOpts& g, const VerifyOpts& opt) {
  auto kind = ninner::suite_from_name(opt.suite);
  if (!kind) throw ninner::InvalidArgument("unknown suite '" + opt.suite + "'");
  ninner::SuiteConfig cfg;
  cfg.suite = *kind;
  cfg.n = opt.n;
  cfg.dim = opt.dim > 0 ? opt.dim : std::max(opt.n, 3);
  cfg.trials = opt.trials;
  cfg.seed = g.seed;
  cfg.tol = g.tol;

  auto reports = ninner::run_suites<S>(cfg);
  bool ok = true;
  for (const auto& r : reports) ok = ok && r.ok();

  Json j;
  j["command"] = "verify";
  j["mode"] = ninner::ScalarTraits<S>::mode_name();
  j["suite"] = opt.suite;
  j["n"] = cfg.n;
  j["dim"] = cfg.dim;
  j["trials"] = cfg.trials;
  j["seed"] = cfg.seed;
  j["tol"] = cfg.tol;
  j["suites"] = suite_reports_json(reports);
  j["ok"] = ok;

  std::string text = suite_reports_text(reports);
  text += std::string("verify: ") + (ok ? "OK" : "FAILED") + "\n";
  emit(g, j, text);
  return ok ? 0 : 1;
}

template <class S>
int cmd_regress(const GlobalOpts& g, const RegressOpts& opt) {
  using Traits = ninner::ScalarTraits<S>;
  auto csv = ninner::read_csv<S>(opt.csv);
  ninner::Dataset<S> ds = ninner::make_dataset(csv, opt.xcol, opt.ycol, opt.zcol);

  ninner::detail::StatEmbedding<S> emb(ds.size());
  std::vector<ninner::RegressionFit<S>> fits;
  fits.push_back(ninner::fit_vector_method(emb.space, ninner::Vector<S>(ds.x),
                                           ninner::Vector<S>(ds.y), emb.u,
                                           ninner::Vector<S>(ds.z), g.tol));
  fits.push_back(ninner::fit_statistics_form(ds, g.tol));
  fits.push_back(ninner::fit_normal_equations(ds, g.tol));

  bool agree = true;
  double discrepancy = 0.0;
  for (std::size_t i = 0; i < fits.size(); ++i)
    for (std::size_t k = i + 1; k < fits.size(); ++k) {
      agree = agree && ninner::near_equal(fits[i].a, fits[k].a, g.tol) &&
              ninner::near_equal(fits[i].b, fits[k].b, g.tol) &&
              ninner::near_equal(fits[i].c, fits[k].c, g.tol);
      for (auto [u, v] : {std::pair{fits[i].a, fits[k].a}, std::pair{fits[i].b, fits[k].b},
                          std::pair{fits[i].c, fits[k].c}})
        discrepancy =
            std::max(discrepancy, std::fabs(Traits::to_double(u) - Traits::to_double(v)));
    }

  Json j;
  j["command"] = "regress";
  j["mode"] = Traits::mode_name();
  j["csv"] = opt.csv;
  j["columns"] = Json::array({opt.xcol, opt.ycol, opt.zcol});
  Json jf = Json::array();
  std::string text;
  for (const auto& f : fits) {
    Json one;
    one["method"] = ninner::fit_method_name(f.method);
    put_scalar(one, "a", f.a);
    put_scalar(one, "b", f.b);
    put_scalar(one, "c", f.c);
    put_scalar(one, "rss", f.residual_sum_squares);
    jf.push_back(one);
    text += std::string(ninner::fit_method_name(f.method)) + ": a=" + Traits::to_string(f.a) +
            " b=" + Traits::to_string(f.b) + " c=" + Traits::to_string(f.c) +
            " rss=" + Traits::to_string(f.residual_sum_squares) + "\n";
  }
  j["fits"] = jf;
  j["max_discrepancy"] = discrepancy;
  j["agree"] = agree;
  text += "max discrepancy: " + ninner::ScalarTraits<double>::to_string(discrepancy) + "\n";
  text += std::string("methods agree: ") + (agree ? "yes" : "NO") + "\n";
  emit(g, j, text);
  return agree ? 0 : 1;
}

template <class S>
int cmd_dodgson(const GlobalOpts& g, const DodgsonOpts& opt) {
  using Traits = ninner::ScalarTraits<S>;
  ninner::SquareMatrix<S> m = ninner::read_matrix_file<S>(opt.file);

  Json j;
  j["command"] = "dodgson";
  j["mode"] = Traits::mode_name();
  j["file"] = opt.file;
  j["order"] = m.order();
  std::string text = "matrix order " + std::to_string(m.order()) + "\n";

  S det = ninner::determinant(m);
  S cond = ninner::condensation_determinant(m);
  put_scalar(j, "determinant", det);
  put_scalar(j, "condensation_determinant", cond);
  bool ok = ninner::near_equal(cond, det, g.tol);
  text += "determinant:              " + Traits::to_string(det) + "\n";
  text += "condensation determinant: " + Traits::to_string(cond) + "\n";

  if (m.order() >= 3) {
    S r40 = ninner::dodgson_residual_e40(m);
    S r41 = ninner::dodgson_residual_e41(m);
    double scale = ninner::dodgson_residual_scale(m);
    put_scalar(j, "residual_leading_block", r40);
    put_scalar(j, "residual_central_block", r41);
    bool zeros = ninner::near_zero(r40, g.tol, scale) && ninner::near_zero(r41, g.tol, scale);
    ok = ok && zeros;
    text += "residual (leading block): " + Traits::to_string(r40) + "\n";
    text += "residual (central block): " + Traits::to_string(r41) + "\n";
  } else {
    text += "identities need order >= 3; skipped\n";
  }
  if (!Traits::is_exact) {
    j["note"] = "float condensation is numerically fragile; prefer exact mode";
    text += "note: float condensation is numerically fragile; prefer exact mode\n";
  }
  j["ok"] = ok;
  text += std::string("dodgson: ") + (ok ? "OK" : "FAILED") + "\n";
  emit(g, j, text);
  return ok ? 0 : 1;
}

template <class S>
int dispatch(const GlobalOpts& g, const CLI::App& app, const ProductOpts& po,
             const VerifyOpts& vo, const RegressOpts& ro, const DodgsonOpts& dopt) {
  if (app.got_subcommand("product")) return cmd_product<S>(g, po);
  if (app.got_subcommand("verify")) return cmd_verify<S>(g, vo);
  if (app.got_subcommand("regress")) return cmd_regress<S>(g, ro);
  if (app.got_subcommand("dodgson")) return cmd_dodgson<S>(g, dopt);
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"n-inner products, Dodgson identities, and vector-method regression"};
  app.require_subcommand(1);

  GlobalOpts g;
  if (const char* env = std::getenv("NINNER_DEFAULT_MODE")) g.mode = env;
  app.add_option("--mode", g.mode, "scalar mode: exact | float")
      ->check(CLI::IsMember({"exact", "float"}))
      ->capture_default_str();
  app.add_option("--tol", g.tol, "float-mode tolerance")->capture_default_str();
  app.add_flag("--json", g.json, "emit JSON instead of text");
  app.add_option("--seed", g.seed, "seed for randomized suites")->capture_default_str();

  ProductOpts po;
  auto* product = app.add_subcommand("product", "evaluate a product on a vector file");
  product->fallthrough();
  product->add_option("kind", po.kind, "iterated | standard")
      ->required()
      ->check(CLI::IsMember({"iterated", "standard"}));
  product->add_option("--file", po.file, "vector file (one vector per line)")->required();
  product->add_option("--x", po.x, "line index of x (0-based)")->capture_default_str();
  product->add_option("--y", po.y, "line index of y (defaults to --x)");
  product->add_option("--cond", po.cond,
                      "conditioner line indices, written order [x_n,...,x_2]")
      ->required();
  product->add_flag("--swap-roles", po.swap_roles,
                    "swap the (x,y) pair with the innermost conditioner");

  VerifyOpts vo;
  auto* verify = app.add_subcommand("verify", "run a randomized identity suite");
  verify->fallthrough();
  verify->add_option("--suite", vo.suite,
                     "axioms | schwarz | representation | scaling | dodgson | gram | "
                     "chebyshev | all")
      ->capture_default_str();
  verify->add_option("--n", vo.n, "product arity n (2..8); ignored by dodgson")
      ->capture_default_str();
  verify->add_option("--dim", vo.dim, "ambient dimension (also max matrix order)");
  verify->add_option("--trials", vo.trials, "trials per check")->capture_default_str();

  RegressOpts ro;
  auto* regress = app.add_subcommand("regress", "fit z ~ a x + b y + c on a CSV dataset");
  regress->fallthrough();
  regress->add_option("--csv", ro.csv, "CSV file with a header row")->required();
  regress->add_option("--x", ro.xcol, "first predictor column")->capture_default_str();
  regress->add_option("--y", ro.ycol, "second predictor column")->capture_default_str();
  regress->add_option("--z", ro.zcol, "response column")->capture_default_str();

  DodgsonOpts dopt;
  auto* dodgson = app.add_subcommand("dodgson", "check Dodgson identities on a matrix file");
  dodgson->fallthrough();
  dodgson->add_option("--file", dopt.file, "matrix file (one row per line)")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (g.mode == "float") return dispatch<double>(g, app, po, vo, ro, dopt);
    return dispatch<ninner::Rational>(g, app, po, vo, ro, dopt);
  } catch (const ninner::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const ninner::DimensionMismatch& e) {
    std::cerr << "dimension mismatch: " << e.what() << "\n";
    return 3;
  } catch (const ninner::SingularSystem& e) {
    std::cerr << "singular system: " << e.what() << "\n";
    return 4;
  } catch (const ninner::InvalidArgument& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return 2;
  } catch (const ninner::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
