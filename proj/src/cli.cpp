#include "qscreen/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "qscreen/basis.hpp"
#include "qscreen/contamination.hpp"
#include "qscreen/design.hpp"
#include "qscreen/identities.hpp"
#include "qscreen/indicator.hpp"
#include "qscreen/io.hpp"
#include "qscreen/kernels.hpp"
#include "qscreen/ranking.hpp"

namespace qscreen {

namespace {

using nlohmann::json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Format { table, csv, json };

Format parse_format(const std::string& text) {
  if (text == "table") return Format::table;
  if (text == "csv") return Format::csv;
  if (text == "json") return Format::json;
  throw UsageError("unknown format '" + text + "' (expected json, csv or table)");
}

// Shortest text that reads back to the same double.
std::string num(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

// Table-style display: three decimals, no negative zero.
std::string fixed3(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::abs(v) < 5e-4) v = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string sci(double v) {
  if (std::isinf(v)) return "inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

json json_number(double v) {
  if (std::isfinite(v)) return v;
  return num(v);
}

json json_array(std::span<const double> values) {
  json a = json::array();
  for (double v : values) a.push_back(json_number(v));
  return a;
}

std::string join_fixed(std::span<const double> values) {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) s += (i ? " " : "") + fixed3(values[i]);
  return s;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

struct Options {
  std::string format = "table";
  std::string out;
  double tol = kIdentityTolerance;
};

void add_output_options(CLI::App* sub, Options& o, bool with_tol) {
  sub->add_option("--format", o.format, "Output format: json, csv or table")->capture_default_str();
  sub->add_option("--out", o.out, "Write the report to this file instead of stdout");
  if (with_tol) sub->add_option("--tol", o.tol, "Absolute tolerance")->capture_default_str();
}

class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw UsageError("cannot write to '" + path + "'");
      os_ = &file_;
    }
  }
  std::ostream& stream() { return *os_; }

 private:
  std::ofstream file_;
  std::ostream* os_;
};

struct DesignInput {
  std::string source;
  bool transpose = false;
  std::vector<std::string> permutes;

  void attach(CLI::App* sub) {
    sub->add_option("design", source, "Design file or builtin:D1|D2|L18")->required();
    sub->add_flag("--transpose", transpose, "Body lists factors as rows");
    sub->add_option("--permute", permutes, "Level map col:image, e.g. 2:201 (repeatable, composes)")->take_all();
  }

  Design load() const {
    Design d = load_design(source, transpose);
    for (const auto& arg : permutes) {
      const auto colon = arg.find(':');
      if (colon == std::string::npos) throw UsageError("--permute expects col:image, got '" + arg + "'");
      std::size_t col = 0;
      const std::string col_text = arg.substr(0, colon);
      auto [ptr, ec] = std::from_chars(col_text.data(), col_text.data() + col_text.size(), col);
      if (ec != std::errc() || ptr != col_text.data() + col_text.size() || col < 1 || col > d.factors()) {
        throw UsageError("--permute column must be in 1.." + std::to_string(d.factors()) + ", got '" + col_text + "'");
      }
      auto perm = LevelPermutation::identity(d.level_counts());
      try {
        perm.set(col - 1, LevelPermutation::parse_image(arg.substr(colon + 1)));
      } catch (const std::invalid_argument& e) {
        throw UsageError("--permute " + arg + ": " + e.what());
      }
      d = apply_permutation(d, perm);
    }
    return d;
  }
};

std::string level_summary(const Design& d) {
  std::string s;
  for (std::size_t j = 0; j < d.factors(); ++j) s += (j ? " " : "") + std::to_string(d.level_count(j));
  return s;
}

// ---------------------------------------------------------------------------
// eval

struct SplitEntry {
  int i, j;
  double value;
};

std::vector<SplitEntry> split_entries(const SplitGrid& g) {
  std::vector<SplitEntry> out;
  for (int i = 0; i <= g.limit(); ++i)
    for (int j = 0; i + j <= g.limit(); ++j) out.push_back({i, j, g(i, j)});
  return out;
}

struct EvalReport {
  std::string source;
  Design design;
  int strength = 0;
  bool mirror = false;
  BetaPattern beta;
  std::optional<ContaminationPattern> lambda;
  std::optional<ContaminationPattern> gls;
  std::optional<ContaminationPattern> mean;
  std::optional<SplitGrid> beta_split, xi, lambda_split;
};

void emit_eval(const EvalReport& r, Format f, std::ostream& os) {
  auto pattern_values = [](const ContaminationPattern& p) { return p.values(); };
  if (f == Format::json) {
    json j;
    j["source"] = r.source;
    j["runs"] = r.design.runs();
    j["factors"] = r.design.factors();
    j["levels"] = std::vector<int>(r.design.level_counts().begin(), r.design.level_counts().end());
    j["strength"] = r.strength;
    j["mirror_symmetric"] = r.mirror;
    j["beta"] = json_array(r.beta.values());
    auto pat = [&](const char* key, const std::optional<ContaminationPattern>& p) {
      if (p) j[key] = {{"first_order", p->first_order()}, {"values", json_array(pattern_values(*p))}};
    };
    pat("lambda", r.lambda);
    pat("lambda_gls", r.gls);
    pat("mean", r.mean);
    auto grid = [&](const char* key, const std::optional<SplitGrid>& g) {
      if (!g) return;
      json a = json::array();
      for (auto e : split_entries(*g)) a.push_back({{"i", e.i}, {"j", e.j}, {"value", json_number(e.value)}});
      j[key] = a;
    };
    grid("beta_split", r.beta_split);
    grid("xi", r.xi);
    grid("lambda_split", r.lambda_split);
    os << j.dump(2) << '\n';
    return;
  }
  if (f == Format::csv) {
    os << "quantity,index,value\n";
    os << "runs,," << r.design.runs() << '\n';
    os << "factors,," << r.design.factors() << '\n';
    os << "strength,," << r.strength << '\n';
    os << "mirror_symmetric,," << (r.mirror ? 1 : 0) << '\n';
    for (std::size_t k = 0; k < r.beta.size(); ++k) os << "beta," << k + 1 << ',' << num(r.beta.values()[k]) << '\n';
    auto pat = [&](const char* key, const std::optional<ContaminationPattern>& p) {
      if (!p) return;
      for (int k = p->first_order(); k <= p->last_order(); ++k) os << key << ',' << k << ',' << num((*p)(k)) << '\n';
    };
    pat("lambda", r.lambda);
    pat("lambda_gls", r.gls);
    pat("mean", r.mean);
    auto grid = [&](const char* key, const std::optional<SplitGrid>& g) {
      if (!g) return;
      for (auto e : split_entries(*g)) os << key << ',' << e.i << ':' << e.j << ',' << num(e.value) << '\n';
    };
    grid("beta_split", r.beta_split);
    grid("xi", r.xi);
    grid("lambda_split", r.lambda_split);
    return;
  }
  os << "design     " << r.source << " (" << r.design.runs() << " runs, " << r.design.factors() << " factors, levels "
     << level_summary(r.design) << ")\n";
  os << "strength   " << r.strength << '\n';
  os << "mirror     " << (r.mirror ? "yes" : "no") << '\n';
  auto row = [&](const char* key, std::size_t first, std::size_t last, std::span<const double> values) {
    const std::string range = "(k=" + std::to_string(first) + ".." + std::to_string(last) + ")";
    os << std::left << std::setw(11) << key << std::setw(10) << range << join_fixed(values) << '\n';
  };
  row("beta", 1, r.beta.size(), r.beta.values());
  auto pat = [&](const char* key, const std::optional<ContaminationPattern>& p) {
    if (p) row(key, p->first_order(), p->last_order(), p->values());
  };
  pat("lambda", r.lambda);
  pat("lambda_gls", r.gls);
  pat("mean", r.mean);
  auto grid = [&](const char* key, const std::optional<SplitGrid>& g) {
    if (!g) return;
    os << key << " (rows i, columns j)\n";
    for (int i = 0; i <= g->limit(); ++i) {
      os << "  i=" << i << ' ';
      for (int j = 0; i + j <= g->limit(); ++j) os << ' ' << std::setw(8) << std::right << fixed3((*g)(i, j));
      os << std::left << '\n';
    }
  };
  grid("beta_split", r.beta_split);
  grid("xi", r.xi);
  grid("lambda_split", r.lambda_split);
}

struct EvalArgs {
  DesignInput input;
  Options opts;
  std::string sigma;
  bool splits = false;
  bool mean = false;
};

int cmd_eval(const EvalArgs& a, std::ostream& out, std::ostream& err) {
  const Format f = parse_format(a.opts.format);
  EvalReport r;
  r.source = a.input.source;
  r.design = a.input.load();
  r.strength = strength(r.design);
  r.mirror = is_mirror_symmetric(r.design);
  r.beta = beta_pattern(r.design);
  int status = kExitOk;

  if (r.strength < 2) {
    err << "warning: design has strength " << r.strength
        << "; contamination of linear effects is only interpretable for strength >= 2\n";
  }
  try {
    r.lambda = contamination_pattern(r.design);
    if (!a.sigma.empty()) {
      Matrix s = load_covariance(a.sigma);
      std::optional<Covariance> cov;
      try {
        cov.emplace(std::move(s));
      } catch (const NotPositiveDefiniteError& e) {
        throw UsageError(a.sigma + ": " + e.what());
      }
      if (cov->size() != r.design.runs()) {
        throw UsageError(a.sigma + ": covariance is " + std::to_string(cov->size()) + "x" +
                         std::to_string(cov->size()) + " but the design has " + std::to_string(r.design.runs()) +
                         " runs");
      }
      r.gls = gls_contamination(r.design, *cov);
    }
  } catch (const SingularMatrixError& e) {
    err << "error: " << e.what() << '\n';
    status = kExitCheckFailed;
  }
  if (a.mean) r.mean = mean_contamination(r.design);
  if (a.splits) {
    if (!r.design.all_levels(3)) throw UsageError("--splits requires every factor to have 3 levels");
    const auto coeffs = indicator_coefficients(r.design);
    r.beta_split = beta_split(coeffs);
    r.xi = xi_grid(coeffs);
    if (r.lambda) r.lambda_split = lambda_split(r.design);
  }
  Sink sink(a.opts.out, out);
  emit_eval(r, f, sink.stream());
  return status;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyArgs {
  DesignInput input;
  Options opts;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream&) {
  const Format f = parse_format(a.opts.format);
  const Design d = a.input.load();
  const VerifyResult result = verify_design(d, a.opts.tol);
  Sink sink(a.opts.out, out);
  std::ostream& os = sink.stream();
  const auto failed = std::count_if(result.reports.begin(), result.reports.end(), [](auto& r) { return !r.passed; });

  if (f == Format::json) {
    json j;
    j["source"] = a.input.source;
    j["tolerance"] = a.opts.tol;
    j["passed"] = result.all_passed();
    j["failed"] = failed;
    j["skipped"] = result.skipped;
    json reps = json::array();
    for (const auto& r : result.reports) {
      reps.push_back({{"check", r.name},
                      {"params", r.params},
                      {"lhs", json_number(r.lhs)},
                      {"rhs", json_number(r.rhs)},
                      {"residual", json_number(r.residual)},
                      {"passed", r.passed},
                      {"note", r.note}});
    }
    j["reports"] = reps;
    os << j.dump(2) << '\n';
  } else if (f == Format::csv) {
    os << "check,params,lhs,rhs,residual,passed,note\n";
    for (const auto& r : result.reports) {
      os << r.name << ',' << csv_field(r.params) << ',' << num(r.lhs) << ',' << num(r.rhs) << ',' << num(r.residual)
         << ',' << (r.passed ? 1 : 0) << ',' << csv_field(r.note) << '\n';
    }
  } else {
    os << std::left << std::setw(22) << "check" << std::setw(24) << "params" << std::setw(12) << "lhs"
       << std::setw(12) << "rhs" << std::setw(11) << "residual" << "status\n";
    for (const auto& r : result.reports) {
      os << std::setw(22) << r.name << std::setw(24) << r.params << std::setw(12) << fixed3(r.lhs) << std::setw(12)
         << fixed3(r.rhs) << std::setw(11) << sci(r.residual) << (r.passed ? "pass" : "FAIL");
      if (!r.note.empty()) os << "  " << r.note;
      os << '\n';
    }
    for (const auto& s : result.skipped) os << "skipped: " << s << '\n';
    os << (result.all_passed() ? "all " + std::to_string(result.reports.size()) + " checks passed"
                               : std::to_string(failed) + " of " + std::to_string(result.reports.size()) +
                                     " checks failed")
       << " (tol " << sci(a.opts.tol) << ")\n";
  }
  return result.all_passed() ? kExitOk : kExitCheckFailed;
}

// ---------------------------------------------------------------------------
// search

struct SearchArgs {
  std::string base;
  bool transpose = false;
  std::size_t m = 0;
  std::string perms = "cyclic";
  std::string dedup = "both";
  unsigned threads = 0;
  Options opts;
};

int cmd_search(SearchArgs a, std::ostream& out, std::ostream& err) {
  // --out csv|json selects the format; anything else is a path.
  if (a.opts.out == "csv" || a.opts.out == "json") {
    a.opts.format = a.opts.out;
    a.opts.out.clear();
  }
  const Format f = parse_format(a.opts.format);
  EnumerateOptions eo;
  try {
    eo.permutations = parse_permutation_set(a.perms);
    eo.dedup = parse_dedup(a.dedup);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  eo.eps = a.opts.tol;
  eo.threads = a.threads;
  const Design base = load_design(a.base, a.transpose);
  if (a.m < 1 || a.m > base.factors()) {
    throw UsageError("--m must be in 1.." + std::to_string(base.factors()) + ", got " + std::to_string(a.m));
  }
  Catalog cat;
  try {
    cat = enumerate(base, a.m, eo);
  } catch (const SingularMatrixError& e) {
    err << "error: " << e.what() << '\n';
    return kExitCheckFailed;
  }
  const auto cons = consistency_rate(cat);
  std::vector<const CatalogEntry*> rows;
  for (const auto& e : cat.entries) rows.push_back(&e);
  std::stable_sort(rows.begin(), rows.end(), [](const CatalogEntry* x, const CatalogEntry* y) {
    return std::pair(x->rank_lambda, x->rank_beta) < std::pair(y->rank_lambda, y->rank_beta);
  });

  Sink sink(a.opts.out, out);
  std::ostream& os = sink.stream();
  if (f == Format::json) {
    json j;
    j["base"] = a.base;
    j["m"] = a.m;
    j["permutations"] = a.perms;
    j["dedup"] = a.dedup;
    j["evaluated"] = cat.raw_count;
    j["consistency"] = {{"consistent", cons.consistent}, {"total", cons.total}, {"rate", cons.rate}};
    json entries = json::array();
    for (const auto* e : rows) {
      json cols = json::array(), imgs = json::array();
      for (std::size_t c = 0; c < e->columns.size(); ++c) {
        cols.push_back(e->columns[c] + 1);
        imgs.push_back(LevelPermutation::format_image(e->images[c]));
      }
      entries.push_back({{"label", e->label()},
                         {"columns", cols},
                         {"images", imgs},
                         {"lambda", json_array(e->lambda.values())},
                         {"beta", json_array(e->beta.values())},
                         {"rank_lambda", e->rank_lambda},
                         {"rank_beta", e->rank_beta}});
    }
    j["entries"] = entries;
    os << j.dump(2) << '\n';
  } else if (f == Format::csv) {
    const auto& first = *rows.front();
    os << "columns";
    for (int k = first.lambda.first_order(); k <= first.lambda.last_order(); ++k) os << ",lambda_" << k;
    for (std::size_t k = 1; k <= first.beta.size(); ++k) os << ",beta_" << k;
    os << ",rank_lambda,rank_beta\n";
    for (const auto* e : rows) {
      os << csv_field(e->label());
      for (double v : e->lambda.values()) os << ',' << num(v);
      for (double v : e->beta.values()) os << ',' << num(v);
      os << ',' << e->rank_lambda << ',' << e->rank_beta << '\n';
    }
    err << "consistency " << cons.consistent << '/' << cons.total << " (" << fixed3(100.0 * cons.rate) << "%), "
        << cat.raw_count << " designs evaluated\n";
  } else {
    std::size_t width = 8;
    for (const auto* e : rows) width = std::max(width, e->label().size() + 2);
    os << std::left << std::setw(static_cast<int>(width)) << "columns" << std::setw(8) << "rank_l" << std::setw(8)
       << "rank_b" << "lambda | beta\n";
    for (const auto* e : rows) {
      os << std::setw(static_cast<int>(width)) << e->label() << std::setw(8) << e->rank_lambda << std::setw(8)
         << e->rank_beta << join_fixed(e->lambda.values()) << " | " << join_fixed(e->beta.values()) << '\n';
    }
    os << "consistency " << cons.consistent << '/' << cons.total << " (" << fixed3(100.0 * cons.rate) << "%), "
       << cat.raw_count << " designs evaluated, dedup " << a.dedup << ", permutations " << a.perms << '\n';
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// permute / mirror / strength / contrasts

void emit_design(const Design& d, Format f, std::ostream& os) {
  if (f == Format::json) {
    json rows = json::array();
    for (std::size_t i = 0; i < d.runs(); ++i) rows.push_back(std::vector<int>(d.row(i).begin(), d.row(i).end()));
    json j{{"runs", d.runs()},
           {"factors", d.factors()},
           {"levels", std::vector<int>(d.level_counts().begin(), d.level_counts().end())},
           {"rows", rows}};
    os << j.dump(2) << '\n';
  } else if (f == Format::csv) {
    for (std::size_t j = 0; j < d.factors(); ++j) os << (j ? "," : "") << 'x' << j + 1;
    os << '\n';
    for (std::size_t i = 0; i < d.runs(); ++i) {
      for (std::size_t j = 0; j < d.factors(); ++j) os << (j ? "," : "") << d.at(i, j);
      os << '\n';
    }
  } else {
    write_design(os, d);
  }
}

struct DesignArgs {
  DesignInput input;
  Options opts;
};

int cmd_permute(const DesignArgs& a, std::ostream& out) {
  const Format f = parse_format(a.opts.format);
  if (a.input.permutes.empty()) throw UsageError("permute needs at least one --permute col:image");
  const Design d = a.input.load();
  Sink sink(a.opts.out, out);
  emit_design(d, f, sink.stream());
  return kExitOk;
}

int cmd_mirror(const DesignArgs& a, std::ostream& out) {
  const Format f = parse_format(a.opts.format);
  const Design d = mirror_image(a.input.load());
  Sink sink(a.opts.out, out);
  emit_design(d, f, sink.stream());
  return kExitOk;
}

int cmd_strength(const DesignArgs& a, std::ostream& out) {
  const Format f = parse_format(a.opts.format);
  const Design d = a.input.load();
  const int r = strength(d);
  Sink sink(a.opts.out, out);
  if (f == Format::json) {
    sink.stream() << json{{"source", a.input.source}, {"strength", r}}.dump(2) << '\n';
  } else if (f == Format::csv) {
    sink.stream() << "strength\n" << r << '\n';
  } else {
    sink.stream() << r << '\n';
  }
  return kExitOk;
}

std::string tuple_label(const ExponentTuple& t) {
  const bool compact = std::all_of(t.entries.begin(), t.entries.end(), [](int e) { return e < 10; });
  std::string s = "t";
  for (std::size_t j = 0; j < t.size(); ++j) {
    if (!compact && j > 0) s += '.';
    s += std::to_string(t[j]);
  }
  return s;
}

struct ContrastArgs {
  DesignInput input;
  Options opts;
  int degree = -1;
  std::string split;
  bool intercept = false;
};

int cmd_contrasts(const ContrastArgs& a, std::ostream& out) {
  const Format f = parse_format(a.opts.format);
  const int chosen = (a.degree >= 0) + !a.split.empty() + a.intercept;
  if (chosen != 1) throw UsageError("contrasts needs exactly one of --degree, --split, --intercept");
  ContrastSelection sel = ContrastSelection::intercept();
  if (a.degree >= 0) sel = ContrastSelection::by_degree(a.degree);
  if (!a.split.empty()) {
    int i = -1, j = -1;
    char comma = 0;
    std::istringstream ss(a.split);
    if (!(ss >> i >> comma >> j) || comma != ',' || i < 0 || j < 0 || !ss.eof()) {
      throw UsageError("--split expects i,j with non-negative integers, got '" + a.split + "'");
    }
    sel = ContrastSelection::by_split(i, j);
  }
  const Design d = a.input.load();
  if (sel.kind == ContrastSelection::Kind::split && !d.all_levels(3)) {
    throw UsageError("--split requires every factor to have 3 levels");
  }
  const ContrastMatrix z = contrast_matrix(d, sel);
  Sink sink(a.opts.out, out);
  std::ostream& os = sink.stream();
  if (f == Format::json) {
    json cols = json::array();
    for (std::size_t c = 0; c < z.cols(); ++c) {
      cols.push_back({{"tuple", z.tuples()[c].entries}, {"values", json_array(z.column(c))}});
    }
    os << json{{"selection", sel.label()}, {"runs", z.rows()}, {"columns", cols}}.dump(2) << '\n';
    return kExitOk;
  }
  os << "run";
  for (const auto& t : z.tuples()) os << ',' << tuple_label(t);
  os << '\n';
  for (std::size_t r = 0; r < z.rows(); ++r) {
    os << r + 1;
    for (std::size_t c = 0; c < z.cols(); ++c) os << ',' << num(z(r, c));
    os << '\n';
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Screening-design evaluation: beta-wordlength and contamination patterns", "qscreen"};
  app.require_subcommand(1);
  std::string kernel;
  app.add_option("--kernel", kernel, "Force a kernel backend (scalar, avx2, neon)");

  EvalArgs eval;
  auto* s_eval = app.add_subcommand("eval", "Beta-wordlength and contamination patterns of a design");
  eval.input.attach(s_eval);
  add_output_options(s_eval, eval.opts, false);
  s_eval->add_option("--sigma", eval.sigma, "Error covariance file; adds the GLS contamination pattern");
  s_eval->add_flag("--splits", eval.splits, "Also report beta_{i,j}, xi_{i,j} and lambda_{i,j} (3-level designs)");
  s_eval->add_flag("--mean", eval.mean, "Also report contamination of the general mean");

  VerifyArgs verify;
  auto* s_verify = app.add_subcommand("verify", "Check the pattern identities on a 3-level design");
  verify.input.attach(s_verify);
  add_output_options(s_verify, verify.opts, true);

  SearchArgs search;
  auto* s_search = app.add_subcommand("search", "Rank all derived designs of a base array under both criteria");
  s_search->add_option("--base", search.base, "Base array file or builtin:L18")->required();
  s_search->add_flag("--transpose", search.transpose, "Base file lists factors as rows");
  s_search->add_option("--m", search.m, "Number of columns per derived design")->required();
  s_search->add_option("--perms", search.perms, "Level maps per column: identity, cyclic or all")->capture_default_str();
  s_search->add_option("--dedup", search.dedup, "Merge rule: both (patterns agree on both) or either")
      ->capture_default_str();
  s_search->add_option("--threads", search.threads, "Worker threads (0: hardware concurrency)");
  add_output_options(s_search, search.opts, true);
  s_search->get_option("--out")->description("csv or json selects the format; anything else is an output file");

  DesignArgs permute, mirror, strength_args;
  auto* s_permute = app.add_subcommand("permute", "Apply level maps and print the resulting design");
  permute.input.attach(s_permute);
  add_output_options(s_permute, permute.opts, false);
  auto* s_mirror = app.add_subcommand("mirror", "Print the mirror image (x -> s-1-x in every factor)");
  mirror.input.attach(s_mirror);
  add_output_options(s_mirror, mirror.opts, false);
  auto* s_strength = app.add_subcommand("strength", "Print the orthogonal-array strength");
  strength_args.input.attach(s_strength);
  add_output_options(s_strength, strength_args.opts, false);

  ContrastArgs contrasts;
  contrasts.opts.format = "csv";
  auto* s_contrasts = app.add_subcommand("contrasts", "Export a contrast matrix (CSV by default)");
  contrasts.input.attach(s_contrasts);
  add_output_options(s_contrasts, contrasts.opts, false);
  s_contrasts->add_option("--degree", contrasts.degree, "Columns with ||t||_1 = k");
  s_contrasts->add_option("--split", contrasts.split, "Columns with i ones and j twos, as i,j");
  s_contrasts->add_flag("--intercept", contrasts.intercept, "The all-ones column");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\nRun with --help for usage.\n";
    return kExitUsage;
  }

  try {
    if (!kernel.empty()) kernels::select(kernels::parse_backend(kernel));
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (s_eval->parsed()) return cmd_eval(eval, out, err);
    if (s_verify->parsed()) return cmd_verify(verify, out, err);
    if (s_search->parsed()) return cmd_search(search, out, err);
    if (s_permute->parsed()) return cmd_permute(permute, out);
    if (s_mirror->parsed()) return cmd_mirror(mirror, out);
    if (s_strength->parsed()) return cmd_strength(strength_args, out);
    if (s_contrasts->parsed()) return cmd_contrasts(contrasts, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DesignError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitCheckFailed;
  }
  return kExitUsage;
}

}  // namespace qscreen
