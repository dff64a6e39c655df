// Command-line surface: analyze | fit | verify | stats | report | convert.
// Exit codes: 0 success, 1 I/O or schema error, 2 verification breach.

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qcog/classicality.hpp"
#include "qcog/dataset.hpp"
#include "qcog/fitter.hpp"
#include "qcog/fock.hpp"
#include "qcog/stats.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitBreach = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw qcog::Error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw qcog::Error("cannot write '" + out_path + "'");
  out << text;
}

qcog::FitOptions parse_m2_mode(const std::string& mode) {
  qcog::FitOptions options;
  if (mode.empty() || mode == "minimal") return options;
  if (mode.rfind("target:", 0) == 0) {
    options.m2_target = std::stod(mode.substr(7));
    if (*options.m2_target < 0 || *options.m2_target > 1) {
      throw qcog::Error("--m2-mode target must be in [0, 1]");
    }
    return options;
  }
  throw qcog::Error("--m2-mode must be 'minimal' or 'target:<value>'");
}

int run_analyze(const std::string& input, const std::string& out_path,
                double tol, const std::string& format) {
  auto dataset = qcog::load_dataset_file(input);
  std::ostringstream out;
  if (format == "markdown") {
    qcog::write_classicality_markdown(dataset, out, tol);
  } else if (format == "structured") {
    qcog::write_classicality_json(dataset, out, tol);
  } else {
    qcog::write_classicality_report(dataset, out, tol);
  }
  write_output(out_path, out.str());
  return kExitOk;
}

int run_fit(const std::string& input, const std::string& out_path,
            const std::string& m2_mode) {
  auto dataset = qcog::load_dataset_file(input);
  auto fit = qcog::fit_dataset(dataset, parse_m2_mode(m2_mode));
  write_output(out_path, qcog::fit_to_json(fit, dataset.pair_label));
  if (fit.summary.conjunction_targets == 0) {
    std::cerr << "feasibility fraction: n/a (empty dataset)\n";
  } else {
    std::cerr << "feasibility fraction: " << fit.summary.feasible_fraction
              << " (" << fit.summary.fitted_exactly << "/"
              << fit.summary.conjunction_targets << " conjunction targets)\n";
  }
  return kExitOk;
}

int run_verify(const std::string& doc_path, const std::string& dataset_path,
               const std::string& out_path, double tol) {
  auto docs = qcog::model_documents_from_json(read_file(doc_path));
  auto dataset = qcog::load_dataset_file(dataset_path);
  std::map<std::string, const qcog::MembershipRecord*> by_name;
  for (const auto& r : dataset.records) by_name[r.exemplar] = &r;

  std::ostringstream out;
  out << "exemplar,weight,residual,within_tol\n";
  bool breach = false;
  for (const auto& doc : docs) {
    auto it = by_name.find(doc.exemplar);
    if (it == by_name.end()) {
      throw qcog::Error("exemplar '" + doc.exemplar + "' not in dataset '" +
                        dataset_path + "'");
    }
    auto report = qcog::verify_published(doc, *it->second);
    const char* names[] = {"muAB", "muABp", "muApB", "muApBp"};
    for (int i = 0; i < 4; ++i) {
      double r = report.conjunction[static_cast<std::size_t>(i)];
      bool ok = std::abs(r) <= tol;
      breach = breach || !ok;
      out << doc.exemplar << ',' << names[i] << ',' << qcog::format_double(r)
          << ',' << (ok ? "yes" : "no") << '\n';
    }
    bool frame_ok = report.frame.within(tol);
    breach = breach || !frame_ok;
    out << doc.exemplar << ",frame," << qcog::format_double(std::max(
               {report.frame.max_norm, report.frame.max_orthogonality,
                report.frame.max_born()}))
        << ',' << (frame_ok ? "yes" : "no") << '\n';
  }
  write_output(out_path, out.str());
  return breach ? kExitBreach : kExitOk;
}

struct StatsConfig {
  std::vector<std::string> inputs;
  std::vector<std::string> likert_inputs;
  std::string out_path;
  double level = 0.95;
  std::optional<double> df_override;
};

// Marginal-law hypotheses over a per-subject panel: the indicator column
// of each concept against the sum of its two conjunction columns, and the
// four-conjunction sum against 1.
void likert_tests(const qcog::LikertResponseMatrix& panel,
                  const std::string& label, double threshold,
                  std::optional<double> df_override, std::ostream& out) {
  auto weights = [&](const std::string& q) {
    const auto& col = panel.column(q);
    std::vector<double> w(col.size());
    for (std::size_t i = 0; i < col.size(); ++i) {
      w[i] = col[i] > 0 ? 1.0 : (col[i] == 0 ? 0.5 : 0.0);
    }
    return w;
  };
  auto sum2 = [](const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> s(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) s[i] = a[i] + b[i];
    return s;
  };
  struct Hypothesis {
    const char* name;
    const char* lhs;
    const char* c1;
    const char* c2;
  };
  const Hypothesis paired[] = {
      {"I_A", "A", "AB", "ABp"},
      {"I_B", "B", "AB", "ApB"},
      {"I_A'", "Ap", "ApBp", "ApB"},
      {"I_B'", "Bp", "ApBp", "ABp"},
  };
  auto emit = [&](const std::string& name, qcog::TestResult r) {
    if (df_override) {
      r.df = *df_override;
      r.p_value = 2 * (1 - qcog::t_cdf(std::abs(r.statistic), r.df));
      r.rejected = r.p_value < r.threshold;
    }
    out << label << ':' << name << ',' << qcog::format_double(r.statistic)
        << ',' << qcog::format_double(r.df) << ','
        << qcog::format_double(r.p_value) << ','
        << qcog::format_double(r.threshold) << ','
        << (r.rejected ? "yes" : "no") << '\n';
  };
  for (const auto& h : paired) {
    try {
      emit(h.name, qcog::paired_t_test(weights(h.lhs),
                                       sum2(weights(h.c1), weights(h.c2)),
                                       threshold));
    } catch (const qcog::DegenerateInputError&) {
      out << label << ':' << h.name << ",degenerate,,,,\n";
    }
  }
  auto total = sum2(sum2(weights("AB"), weights("ABp")),
                    sum2(weights("ApB"), weights("ApBp")));
  try {
    emit("I_ABA'B'", qcog::one_sample_t_test(total, 1.0, threshold));
  } catch (const qcog::DegenerateInputError&) {
    out << label << ":I_ABA'B',degenerate,,,,\n";
  }
}

int run_stats(const StatsConfig& config) {
  std::vector<qcog::DerivedParams> pooled;
  for (const auto& path : config.inputs) {
    auto dataset = qcog::load_dataset_file(path);
    for (const auto& r : dataset.records) {
      pooled.push_back(qcog::compute_derived(r));
    }
  }
  if (pooled.size() < 3 && config.likert_inputs.empty()) {
    throw qcog::Error("need at least 3 pooled records");
  }

  std::ostringstream out;
  if (pooled.size() >= 3) {
    struct Column {
      const char* name;
      double qcog::DerivedParams::* member;
    };
    const Column columns[] = {
        {"I_A", &qcog::DerivedParams::iA},   {"I_B", &qcog::DerivedParams::iB},
        {"I_A'", &qcog::DerivedParams::iAp}, {"I_B'", &qcog::DerivedParams::iBp},
        {"I_ABA'B'", &qcog::DerivedParams::iTotal},
    };
    out << "# sorted-regression and value bands (level "
        << qcog::format_double(config.level) << ")\n";
    out << "label,slope,intercept,r_squared,mean_ci_lo,mean_ci_hi,"
           "quantile_lo,quantile_hi\n";
    for (const auto& col : columns) {
      std::vector<double> values;
      values.reserve(pooled.size());
      for (const auto& p : pooled) values.push_back(p.*col.member);
      auto reg = qcog::sorted_regression(values);
      auto band = qcog::value_band(values, config.level);
      out << col.name << ',' << qcog::format_double(reg.slope) << ','
          << qcog::format_double(reg.intercept) << ','
          << qcog::format_double(reg.r_squared) << ','
          << qcog::format_double(band.mean_ci.lo) << ','
          << qcog::format_double(band.mean_ci.hi) << ','
          << qcog::format_double(band.quantile_band.lo) << ','
          << qcog::format_double(band.quantile_band.hi) << '\n';
    }
  }
  if (!config.likert_inputs.empty()) {
    out << "# t-tests (threshold = 0.05/24 Bonferroni)\n";
    out << "label,t,df,p,threshold,rejected\n";
    double threshold = qcog::bonferroni_threshold(0.05, 24);
    for (const auto& path : config.likert_inputs) {
      auto panel = qcog::load_likert_file(path);
      // Question labels may carry an exemplar prefix `<exemplar>:<tag>`.
      std::map<std::string, qcog::LikertResponseMatrix> by_exemplar;
      bool prefixed = false;
      for (const auto& q : panel.questions) {
        if (q.find(':') != std::string::npos) prefixed = true;
      }
      if (!prefixed) {
        likert_tests(panel, path, threshold, config.df_override, out);
      } else {
        for (std::size_t qi = 0; qi < panel.questions.size(); ++qi) {
          auto colon = panel.questions[qi].find(':');
          auto& sub = by_exemplar[panel.questions[qi].substr(0, colon)];
          sub.subjects = panel.subjects;
          sub.questions.push_back(panel.questions[qi].substr(colon + 1));
          sub.entries.push_back(panel.entries[qi]);
        }
        for (auto& [exemplar, sub] : by_exemplar) {
          likert_tests(sub, exemplar, threshold, config.df_override, out);
        }
      }
    }
  }
  write_output(config.out_path, out.str());
  return kExitOk;
}

int run_convert(const std::string& input, const std::string& out_path) {
  auto panel = qcog::load_likert_file(input);
  // Questions follow `<exemplar>:<tag>` with tags A,B,Ap,Bp,AB,ABp,ApB,ApBp;
  // unprefixed tags convert a single unnamed exemplar.
  std::map<std::string, std::map<std::string, double>> weights;
  for (std::size_t qi = 0; qi < panel.questions.size(); ++qi) {
    const auto& q = panel.questions[qi];
    auto colon = q.find(':');
    std::string exemplar = colon == std::string::npos ? "" : q.substr(0, colon);
    std::string tag = colon == std::string::npos ? q : q.substr(colon + 1);
    weights[exemplar][tag] = qcog::likert_to_weight(panel.entries[qi]);
  }
  qcog::ConceptPairDataset dataset;
  for (auto& [exemplar, w] : weights) {
    const char* tags[] = {"A", "B", "Ap", "Bp", "AB", "ABp", "ApB", "ApBp"};
    for (const char* tag : tags) {
      if (!w.count(tag)) {
        throw qcog::Error("exemplar '" + exemplar + "' missing question '" +
                          tag + "'");
      }
    }
    qcog::MembershipRecord r;
    r.exemplar = exemplar.empty() ? "exemplar" : exemplar;
    r.muA = w["A"];
    r.muB = w["B"];
    r.muAp = w["Ap"];
    r.muBp = w["Bp"];
    r.muAB = w["AB"];
    r.muABp = w["ABp"];
    r.muApB = w["ApB"];
    r.muApBp = w["ApBp"];
    dataset.records.push_back(std::move(r));
  }
  write_output(out_path, qcog::serialize(dataset));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Classicality diagnostics and two-sector membership modeling for "
      "concept-conjunction data"};
  app.require_subcommand(1);

  std::string input, second_input, out_path, m2_mode = "minimal";
  std::string format = "tabular";
  double tol = qcog::kDefaultTolerance;
  double verify_tol = 0.03;
  StatsConfig stats_config;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--out", out_path, "Write output to this path");
  };

  auto* analyze = app.add_subcommand("analyze", "Per-exemplar diagnostics");
  analyze->add_option("dataset", input)->required();
  analyze->add_option("--tol", tol, "Classicality tolerance");
  analyze->add_option("--format", format)
      ->check(CLI::IsMember({"tabular", "structured", "markdown"}));
  add_common(analyze);

  auto* report = app.add_subcommand("report", "Diagnostics as markdown");
  report->add_option("dataset", input)->required();
  report->add_option("--tol", tol, "Classicality tolerance");
  add_common(report);

  auto* fit = app.add_subcommand("fit", "Fit the two-sector model");
  fit->add_option("dataset", input)->required();
  fit->add_option("--m2-mode", m2_mode, "minimal | target:<value>");
  add_common(fit);

  auto* verify = app.add_subcommand("verify", "Check a model document");
  verify->add_option("document", input)->required();
  verify->add_option("dataset", second_input)->required();
  verify->add_option("--tol", verify_tol, "Residual tolerance");
  add_common(verify);

  auto* stats = app.add_subcommand("stats", "Regression and bands over I");
  stats->add_option("datasets", stats_config.inputs);
  stats->add_option("--likert", stats_config.likert_inputs,
                    "Raw panels for t-tests");
  stats->add_option("--level", stats_config.level, "Band level");
  double df_value = 0;
  auto* df_opt = stats->add_option("--df", df_value, "Override test df");
  add_common(stats);

  auto* convert = app.add_subcommand("convert", "7-point panel to dataset");
  convert->add_option("panel", input)->required();
  add_common(convert);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*analyze) return run_analyze(input, out_path, tol, format);
    if (*report) return run_analyze(input, out_path, tol, "markdown");
    if (*fit) return run_fit(input, out_path, m2_mode);
    if (*verify) return run_verify(input, second_input, out_path, verify_tol);
    if (*stats) {
      stats_config.out_path = out_path;
      if (*df_opt) stats_config.df_override = df_value;
      return run_stats(stats_config);
    }
    if (*convert) return run_convert(input, out_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitIo;
}
