// Copyright 2026 The modalbench Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "modalbench/analysis/analysis.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

namespace modalbench {

namespace {

const std::vector<std::string> kModalityLevels{"none", "necessity", "possibility"};
const std::vector<std::string> kValidGroups{"disjunctive", "modus_ponens", "modus_tollens"};
constexpr ArgGroup kAllGroups[] = {ArgGroup::kDisjunctive,       ArgGroup::kModusPonens,
                                   ArgGroup::kModusTollens,      ArgGroup::kAffirmingDisjunct,
                                   ArgGroup::kAffirmingConsequent, ArgGroup::kDenyingAntecedent};

bool IsMainRule(ArgForm a) {
  return a == ArgForm::kDisjL || a == ArgForm::kDisjR || a == ArgForm::kModusPonensL || a == ArgForm::kModusTollensR;
}

std::vector<std::string> AllGroupNames() {
  std::vector<std::string> out;
  for (ArgGroup g : kAllGroups) out.emplace_back(ArgGroupName(g));
  return out;
}

struct Mean {
  double sum = 0;
  std::size_t n = 0;
  void Add(double x) {
    sum += x;
    ++n;
  }
  std::optional<double> Get() const { return n ? std::optional<double>(sum / static_cast<double>(n)) : std::nullopt; }
};

template <std::size_t N>
std::string ArgMax(const std::array<std::optional<double>, N>& cells, const std::vector<std::string>& names) {
  std::string best;
  double value = -1;
  for (std::size_t i = 0; i < N; ++i) {
    if (cells[i] && *cells[i] > value) {
      value = *cells[i];
      best = names[i];
    }
  }
  return best;
}

std::vector<Observation> MainForms(const std::vector<Observation>& obs) {
  std::vector<Observation> out;
  for (const auto& o : obs) {
    if (o.family == Family::kMain24 && IsMainRule(o.arg_form)) out.push_back(o);
  }
  return out;
}

// Fits use the natural-lexicon observations when there are any.
std::vector<Observation> FitPool(const std::vector<Observation>& obs) {
  std::vector<Observation> natural;
  for (const auto& o : obs) {
    if (o.lexicon == LexiconKind::kNatural) natural.push_back(o);
  }
  return natural.empty() ? obs : natural;
}

Fit FitLlmModel(std::vector<Observation> obs, bool valid_only, bool yes_share, const FitOptions& opts) {
  obs = FitPool(MainForms(obs));
  if (valid_only) {
    std::erase_if(obs, [](const Observation& o) { return o.validity != Answer::kYes; });
  }
  if (obs.empty()) throw FitError("no observations to fit");

  struct Cell {
    Observation proto;
    Mean y, ppl;
  };
  std::map<std::pair<std::string, std::string>, Cell> cells;
  std::vector<DataRow> rows;
  for (const auto& o : obs) {
    if (!o.perplexity) throw FitError("observation " + o.item_id + " has no perplexity");
    const double y = yes_share ? o.yes_share : o.soft_score;
    if (opts.per_form_means) {
      auto& c = cells[{o.model, o.form_id}];
      c.proto = o;
      c.y.Add(y);
      c.ppl.Add(*o.perplexity);
      continue;
    }
    DataRow r;
    r.factors = {{"modality", std::string(ModalityName(o.modality))},
                 {"arg_group", std::string(ArgGroupName(ArgGroupOf(o.arg_form, o.validity)))},
                 {"model", o.model}};
    r.covariates = {{"perplexity", *o.perplexity}};
    r.y = y;
    rows.push_back(std::move(r));
  }
  for (const auto& [key, c] : cells) {
    DataRow r;
    r.factors = {{"modality", std::string(ModalityName(c.proto.modality))},
                 {"arg_group", std::string(ArgGroupName(ArgGroupOf(c.proto.arg_form, c.proto.validity)))},
                 {"model", c.proto.model}};
    r.covariates = {{"perplexity", *c.ppl.Get()}};
    r.y = *c.y.Get();
    rows.push_back(std::move(r));
  }
  Mean m;
  for (const auto& r : rows) m.Add(r.covariates.at("perplexity"));
  double ss = 0;
  for (const auto& r : rows) ss += std::pow(r.covariates.at("perplexity") - *m.Get(), 2);
  const double sd = std::sqrt(ss / static_cast<double>(rows.size()));
  const bool constant = sd <= 1e-12 * (std::abs(*m.Get()) + 1);
  if (opts.standardize_perplexity && !constant) {
    for (auto& r : rows) r.covariates["perplexity"] = (r.covariates["perplexity"] - *m.Get()) / sd;
  }

  ModelSpec spec;
  spec.factors = {"modality", "arg_group"};
  spec.levels = {{"modality", kModalityLevels}, {"arg_group", AllGroupNames()}};
  // A constant perplexity is collinear with the intercept.
  if (!constant) spec.covariates = {"perplexity"};
  std::set<std::string> models;
  for (const auto& o : obs) models.insert(o.model);
  if (opts.per_model_terms && models.size() > 1) {
    spec.group = "model";
    if (!constant) spec.group_slope = "perplexity";
  }
  Fit fit = FitLinear(rows, spec);
  if (constant) fit.warnings.push_back("perplexity is constant; covariate dropped");
  return fit;
}

// Minimal CSV writer: quotes fields that need it.
class Csv {
 public:
  Csv(const std::string& path, const std::vector<std::string>& notes) : out_(path) {
    if (!out_) throw std::runtime_error("cannot write " + path);
    for (const auto& n : notes) out_ << "# " << n << '\n';
  }
  Csv& operator<<(const std::string& s) {
    Sep();
    if (s.find_first_of(",\"\n") != std::string::npos) {
      out_ << '"';
      for (char c : s) out_ << (c == '"' ? "\"\"" : std::string(1, c));
      out_ << '"';
    } else {
      out_ << s;
    }
    return *this;
  }
  Csv& operator<<(const char* s) { return *this << std::string(s); }
  Csv& operator<<(std::string_view s) { return *this << std::string(s); }
  Csv& operator<<(double x) {
    Sep();
    std::ostringstream s;
    s.precision(10);
    s << x;
    out_ << s.str();
    return *this;
  }
  Csv& operator<<(std::size_t x) {
    Sep();
    out_ << x;
    return *this;
  }
  Csv& operator<<(int x) {
    Sep();
    out_ << x;
    return *this;
  }
  Csv& operator<<(const std::optional<double>& x) {
    if (x) return *this << *x;
    Sep();
    return *this;
  }
  void EndRow() {
    out_ << '\n';
    first_ = true;
  }

 private:
  void Sep() {
    if (!first_) out_ << ',';
    first_ = false;
  }
  std::ofstream out_;
  bool first_ = true;
};

void Row(Csv& csv, std::initializer_list<std::string> cells) {
  for (const auto& c : cells) csv << c;
  csv.EndRow();
}

void WriteCoefficients(const std::string& path, const Fit& fit, const std::vector<std::string>& notes) {
  Csv csv(path, notes);
  Row(csv, {"term", "estimate", "std_error", "z", "p_two_sided"});
  for (std::size_t k = 0; k < fit.design.terms.size(); ++k) {
    const double est = fit.beta[static_cast<Eigen::Index>(k)];
    const double se = std::sqrt(fit.cov(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)));
    const double z = se > 0 ? est / se : 0.0;
    csv << fit.design.terms[k] << est << se << z << 2.0 * (1.0 - NormalCdf(std::abs(z)));
    csv.EndRow();
  }
}

void WriteEmmeans(const std::string& path, const Fit& fit, const std::vector<std::string>& factors,
                  const std::vector<std::string>& notes) {
  Csv csv(path, notes);
  Row(csv, {"factor", "level", "emmean", "std_error", "ci95_lower", "ci95_upper"});
  for (const auto& f : factors) {
    for (const auto& m : EstimatedMarginalMeans(fit, f)) {
      csv << f << m.level << m.estimate << m.se << m.lower << m.upper;
      csv.EndRow();
    }
  }
}

void WriteFitSummary(const std::string& path, const Fit& fit, std::vector<std::string> notes) {
  for (const auto& w : fit.warnings) notes.push_back("warning: " + w);
  Csv csv(path, notes);
  Row(csv, {"n", "terms", "r_squared", "residual_variance", "log_likelihood"});
  csv << fit.n << fit.design.terms.size() << fit.r2 << fit.sigma2 << fit.loglik;
  csv.EndRow();
}

const std::vector<std::string> kFitNotes{
    "treatment coding; references modality=none, arg_group=disjunctive",
    "per-model intercepts and perplexity slopes are fixed terms when several models are present; R^2 is plain R^2",
    "EMMs average a balanced grid of the other factor and of the models, perplexity at its sample mean; CIs and "
    "one-sided p-values use the normal approximation"};

}  // namespace

std::string_view ArgGroupName(ArgGroup g) {
  switch (g) {
    case ArgGroup::kDisjunctive: return "disjunctive";
    case ArgGroup::kModusPonens: return "modus_ponens";
    case ArgGroup::kModusTollens: return "modus_tollens";
    case ArgGroup::kAffirmingDisjunct: return "affirming_disjunct";
    case ArgGroup::kAffirmingConsequent: return "affirming_consequent";
    case ArgGroup::kDenyingAntecedent: return "denying_antecedent";
  }
  return "disjunctive";
}

ArgGroup ArgGroupOf(ArgForm rule, Answer validity) {
  const bool valid = validity == Answer::kYes;
  switch (rule) {
    case ArgForm::kDisjL:
    case ArgForm::kDisjR: return valid ? ArgGroup::kDisjunctive : ArgGroup::kAffirmingDisjunct;
    case ArgForm::kModusPonensL: return valid ? ArgGroup::kModusPonens : ArgGroup::kAffirmingConsequent;
    case ArgForm::kModusTollensR: return valid ? ArgGroup::kModusTollens : ArgGroup::kDenyingAntecedent;
    default: break;
  }
  throw std::invalid_argument("argument form " + std::string(ArgFormName(rule)) + " has no syllogism group");
}

std::vector<Observation> ObservationsFromRun(const EvalRun& run) {
  std::vector<Observation> out;
  for (const auto& r : run.responses) {
    Observation o;
    o.model = r.model;
    o.item_id = r.item_id;
    o.form_id = r.form_id;
    o.family = r.family;
    o.modality = r.modality;
    o.arg_form = r.arg_form;
    o.validity = r.ground_truth;
    o.lexicon = r.lexicon_kind;
    o.soft_score = r.soft_score;
    o.yes_share = SoftAccuracy(r.answer, Answer::kYes);
    o.perplexity = r.perplexity;
    out.push_back(std::move(o));
  }
  return out;
}

std::vector<HumanObservation> LoadHumanTrials(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open trials " + path);
  std::vector<HumanObservation> out;
  std::string line;
  for (int lineno = 1; std::getline(in, line); ++lineno) {
    if (line.empty()) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      HumanObservation h;
      h.participant = j.at("session_id").get<std::string>();
      h.item_id = j.at("item_id").get<std::string>();
      h.form_id = j.at("form_id").get<std::string>();
      h.modality = ParseModality(j.at("modality").get<std::string>());
      h.arg_form = ParseArgForm(j.at("arg_form").get<std::string>());
      h.validity = ParseAnswer(j.at("ground_truth").get<std::string>());
      h.correct = j.at("correct").get<bool>();
      h.rt_ms = j.at("rt_ms").get<double>();
      out.push_back(std::move(h));
    } catch (const nlohmann::json::exception& e) {
      throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

namespace {

template <typename Obs, typename Score>
GroupRow MakeGroupRow(const std::string& model, const std::vector<const Obs*>& obs, Score score) {
  GroupRow row;
  row.model = model;
  Mean overall;
  std::array<Mean, 3> modality;
  std::array<Mean, 6> groups;
  for (const Obs* o : obs) {
    const double s = score(*o);
    overall.Add(s);
    modality[static_cast<std::size_t>(o->modality)].Add(s);
    groups[static_cast<std::size_t>(ArgGroupOf(o->arg_form, o->validity))].Add(s);
  }
  row.n = overall.n;
  row.overall = overall.Get().value_or(0.0);
  for (std::size_t i = 0; i < 3; ++i) row.modality[i] = modality[i].Get();
  for (std::size_t i = 0; i < 6; ++i) row.arg_group[i] = groups[i].Get();
  row.max_modality = ArgMax(row.modality, kModalityLevels);
  row.max_arg_group = ArgMax(row.arg_group, AllGroupNames());
  return row;
}

}  // namespace

std::vector<GroupRow> GroupTable(const std::vector<Observation>& obs) {
  std::map<std::string, std::vector<const Observation*>> by_model;
  for (const auto& o : obs) {
    if (o.family == Family::kMain24 && IsMainRule(o.arg_form)) by_model[o.model].push_back(&o);
  }
  std::vector<GroupRow> rows;
  for (const auto& [model, list] : by_model) {
    rows.push_back(MakeGroupRow(model, list, [](const Observation& o) { return o.soft_score; }));
  }
  return rows;
}

GroupRow HumanGroupRow(const std::vector<HumanObservation>& obs) {
  std::vector<const HumanObservation*> list;
  for (const auto& o : obs) {
    if (IsMainRule(o.arg_form)) list.push_back(&o);
  }
  return MakeGroupRow("human", list, [](const HumanObservation& o) { return o.correct ? 1.0 : 0.0; });
}

Fit FitAccuracyModel(const std::vector<Observation>& obs, const FitOptions& opts) {
  return FitLlmModel(obs, true, false, opts);
}

Fit FitAffirmationModel(const std::vector<Observation>& obs, const FitOptions& opts) {
  return FitLlmModel(obs, false, true, opts);
}

std::vector<ContrastResult> LogicalFormContrasts(const Fit& fit) {
  return {Contrast(fit, "modality", "none", "possibility"),
          Contrast(fit, "modality", "necessity", "none"),
          Contrast(fit, "modality", "necessity", "possibility"),
          Contrast(fit, "arg_group", "disjunctive", "modus_ponens"),
          Contrast(fit, "arg_group", "modus_tollens", "modus_ponens"),
          Contrast(fit, "arg_group", "modus_tollens", "disjunctive")};
}

namespace {

std::vector<DataRow> HumanRows(const std::vector<HumanObservation>& obs) {
  std::vector<DataRow> rows;
  for (const auto& o : obs) {
    if (!IsMainRule(o.arg_form) || o.validity != Answer::kYes) continue;
    DataRow r;
    r.factors = {{"modality", std::string(ModalityName(o.modality))},
                 {"arg_group", std::string(ArgGroupName(ArgGroupOf(o.arg_form, o.validity)))},
                 {"participant", o.participant}};
    r.covariates = {{"rt", o.rt_ms / 1000.0}};
    r.y = o.correct ? 1.0 : 0.0;
    rows.push_back(std::move(r));
  }
  return rows;
}

ModelSpec HumanSpec(bool with_arg_group, std::size_t participants) {
  ModelSpec spec;
  spec.factors = {"modality"};
  if (with_arg_group) spec.factors.push_back("arg_group");
  spec.levels = {{"modality", kModalityLevels}, {"arg_group", kValidGroups}};
  spec.covariates = {"rt"};
  if (participants > 1) spec.group = "participant";
  return spec;
}

}  // namespace

HumanFit FitHumanModel(const std::vector<HumanObservation>& obs) {
  const auto rows = HumanRows(obs);
  if (rows.empty()) throw FitError("no valid-form human trials to fit");
  std::set<std::string> participants;
  for (const auto& r : rows) participants.insert(r.factors.at("participant"));
  HumanFit out{FitLogistic(rows, HumanSpec(true, participants.size())), {}};
  const Fit reduced = FitLogistic(rows, HumanSpec(false, participants.size()));
  out.drop_arg_group = CompareNested(out.full, reduced);
  return out;
}

std::vector<std::string> WriteReports(const std::string& dir, const std::vector<Observation>& obs,
                                      const std::vector<HumanObservation>& human, const FitOptions& opts) {
  std::filesystem::create_directories(dir);
  std::vector<std::string> written;
  auto path = [&](const std::string& name) {
    written.push_back(name);
    return (std::filesystem::path(dir) / name).string();
  };

  std::vector<GroupRow> groups = GroupTable(obs);
  if (!human.empty()) groups.push_back(HumanGroupRow(human));
  if (!groups.empty()) {
    Csv csv(path("group_table.csv"), {"mean soft accuracy (humans: share correct) on the main forms"});
    csv << "model" << "n" << "overall";
    for (const auto& m : kModalityLevels) csv << m;
    for (const auto& g : AllGroupNames()) csv << g;
    csv << "max_modality" << "max_arg_group";
    csv.EndRow();
    for (const auto& g : groups) {
      csv << g.model << g.n << g.overall;
      for (const auto& m : g.modality) csv << m;
      for (const auto& a : g.arg_group) csv << a;
      csv << g.max_modality << g.max_arg_group;
      csv.EndRow();
    }
  }

  if (!obs.empty()) {
    std::vector<std::string> notes = kFitNotes;
    notes.push_back(opts.per_form_means ? "observations: per-form means over interpretations"
                                        : "observations: individual items");
    const Fit acc = FitAccuracyModel(obs, opts);
    WriteFitSummary(path("accuracy_fit.csv"), acc, notes);
    WriteCoefficients(path("accuracy_coefficients.csv"), acc, notes);
    FitOptions standardized = opts;
    standardized.standardize_perplexity = true;
    WriteCoefficients(path("accuracy_coefficients_standardized.csv"), FitAccuracyModel(obs, standardized),
                      {"as accuracy_coefficients.csv with perplexity z-scored"});
    WriteEmmeans(path("accuracy_emmeans.csv"), acc, {"modality", "arg_group"}, notes);
    {
      Csv csv(path("accuracy_contrasts.csv"), notes);
      Row(csv, {"hypothesis", "estimate", "std_error", "p_one_sided"});
      for (const auto& c : LogicalFormContrasts(acc)) {
        csv << c.hypothesis << c.estimate << c.se << c.p_value;
        csv.EndRow();
      }
    }
    const Fit aff = FitAffirmationModel(obs, opts);
    WriteFitSummary(path("affirmation_fit.csv"), aff, notes);
    WriteCoefficients(path("affirmation_coefficients.csv"), aff, notes);
    WriteEmmeans(path("affirmation_emmeans.csv"), aff, {"modality", "arg_group"}, notes);

    // Per-form means (plot data) and correlations.
    struct FormCell {
      Mean ppl, soft;
    };
    std::map<std::tuple<std::string, std::string, std::string>, FormCell> forms;
    std::map<std::pair<std::string, std::string>, Mean> ppl_by_lexicon;
    std::map<std::pair<std::string, std::string>, std::pair<std::vector<double>, std::vector<double>>> points;
    for (const auto& o : obs) {
      if (!o.perplexity) continue;
      const std::string lex(LexiconKindName(o.lexicon));
      auto& f = forms[{o.model, lex, o.form_id}];
      f.ppl.Add(*o.perplexity);
      f.soft.Add(o.soft_score);
      ppl_by_lexicon[{o.model, lex}].Add(*o.perplexity);
      for (const std::string& scope : {lex, std::string("all")}) {
        points[{o.model, scope}].first.push_back(*o.perplexity);
        points[{o.model, scope}].second.push_back(o.soft_score);
      }
    }
    {
      Csv csv(path("form_means.csv"), {"per model, lexicon and form: mean perplexity and mean soft accuracy"});
      Row(csv, {"model", "lexicon", "form_id", "n", "mean_perplexity", "mean_soft_accuracy"});
      for (const auto& [key, c] : forms) {
        csv << std::get<0>(key) << std::get<1>(key) << std::get<2>(key) << c.ppl.n << c.ppl.Get() << c.soft.Get();
        csv.EndRow();
      }
    }
    {
      Csv csv(path("perplexity_by_lexicon.csv"), {});
      Row(csv, {"model", "lexicon", "n", "mean_perplexity"});
      for (const auto& [key, m] : ppl_by_lexicon) {
        csv << key.first << key.second << m.n << m.Get();
        csv.EndRow();
      }
    }
    {
      Csv csv(path("correlations.csv"), {"perplexity vs soft accuracy; empty cells where a variable is constant"});
      Row(csv, {"model", "lexicon", "level", "n", "pearson", "spearman"});
      for (const auto& [key, xy] : points) {
        std::map<std::string, std::pair<Mean, Mean>> per_form;
        std::vector<double> fx, fy;
        for (const auto& [fkey, c] : forms) {
          if (std::get<0>(fkey) != key.first) continue;
          if (key.second != "all" && std::get<1>(fkey) != key.second) continue;
          fx.push_back(*c.ppl.Get());
          fy.push_back(*c.soft.Get());
        }
        for (const auto& [level, data] : {std::pair{std::string("item"), xy}, std::pair{std::string("form_mean"), std::pair{fx, fy}}}) {
          csv << key.first << key.second << level << data.first.size();
          try {
            const Correlation c = Correlate(data.first, data.second);
            csv << c.pearson << c.spearman;
          } catch (const std::invalid_argument&) {
            csv << std::optional<double>() << std::optional<double>();
          }
          csv.EndRow();
        }
      }
    }
  }

  if (!human.empty()) {
    const HumanFit hf = FitHumanModel(human);
    std::vector<std::string> notes{
        "logistic regression on valid main forms; rt in seconds; per-participant intercepts as fixed terms",
        "treatment coding; references modality=none, arg_group=disjunctive; link (logit) scale"};
    for (const auto& w : hf.full.warnings) notes.push_back("warning: " + w);
    WriteCoefficients(path("human_coefficients.csv"), hf.full, notes);
    WriteEmmeans(path("human_emmeans.csv"), hf.full, {"modality", "arg_group"}, notes);
    Csv csv(path("human_lr_test.csv"), {"likelihood-ratio test for dropping arg_group"});
    Row(csv, {"statistic", "df", "p_value"});
    csv << hf.drop_arg_group.statistic << hf.drop_arg_group.df << hf.drop_arg_group.p_value;
    csv.EndRow();
  }
  return written;
}

}  // namespace modalbench
