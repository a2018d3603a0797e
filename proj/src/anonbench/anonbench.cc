//
// Copyright 2026 The infoflow Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "infoflow/anonbench.h"
#include "infoflow/errors.h"
#include "infoflow/random.h"

namespace infoflow::anonbench {

namespace {

std::vector<std::string> Project(const std::vector<std::string>& row,
                                 const std::vector<std::size_t>& cols) {
  std::vector<std::string> out;
  out.reserve(cols.size());
  for (std::size_t c : cols) out.push_back(row[c]);
  return out;
}

std::vector<std::string> Domain(const Table& t, std::size_t col) {
  const Column& c = t.columns()[col];
  if (!c.states.empty()) return c.states;
  std::set<std::string> seen;
  for (const auto& row : t.rows()) seen.insert(row[col]);
  return {seen.begin(), seen.end()};
}

}  // namespace

std::size_t KAnonymityLevel(const Table& t) {
  if (t.num_rows() == 0) throw DomainError("k-anonymity: empty table");
  const auto qi = t.ColumnsWithRole(Role::kQuasiIdentifier);
  if (qi.empty()) throw DomainError("k-anonymity: no quasi-identifier columns");
  std::map<std::vector<std::string>, std::size_t> classes;
  for (const auto& row : t.rows()) ++classes[Project(row, qi)];
  std::size_t k = t.num_rows();
  for (const auto& [key, size] : classes) k = std::min(k, size);
  return k;
}

AnonReport LinkageAttack(const Table& release, const Table& auxiliary) {
  const auto release_qi = release.ColumnsWithRole(Role::kQuasiIdentifier);
  std::vector<std::size_t> rel_cols;
  std::vector<std::size_t> aux_cols;
  AnonReport report;
  for (std::size_t c : release_qi) {
    const auto& name = release.columns()[c].name;
    auto a = auxiliary.FindColumn(name);
    if (a && auxiliary.columns()[*a].role == Role::kQuasiIdentifier) {
      rel_cols.push_back(c);
      aux_cols.push_back(*a);
      report.shared_qi.push_back(name);
    }
  }
  if (rel_cols.empty()) {
    throw DomainError("linkage: release and auxiliary share no "
                      "quasi-identifier column");
  }
  report.k_achieved = KAnonymityLevel(release);
  const auto sensitive = release.ColumnsWithRole(Role::kSensitive);

  // Equivalence classes of the release over all of its quasi-identifiers,
  // in order of first appearance.
  std::map<std::vector<std::string>, std::size_t> class_of;
  std::vector<std::set<std::vector<std::string>>> class_values;
  std::vector<std::size_t> row_class;
  for (const auto& row : release.rows()) {
    auto key = Project(row, release_qi);
    auto [it, inserted] = class_of.emplace(key, report.classes.size());
    if (inserted) {
      report.classes.push_back({key, 0, 0, false, 0});
      class_values.emplace_back();
    }
    ++report.classes[it->second].size;
    class_values[it->second].insert(Project(row, sensitive));
    row_class.push_back(it->second);
  }
  std::size_t homogeneous = 0;
  for (std::size_t c = 0; c < report.classes.size(); ++c) {
    auto& cls = report.classes[c];
    cls.distinct_sensitive = class_values[c].size();
    cls.homogeneous = !sensitive.empty() && cls.distinct_sensitive == 1;
    if (cls.homogeneous) ++homogeneous;
  }
  report.homogeneity_rate =
      static_cast<double>(homogeneous) /
      static_cast<double>(report.classes.size());

  std::size_t reidentified = 0;
  std::size_t disclosed = 0;
  for (const auto& aux_row : auxiliary.rows()) {
    const auto key = Project(aux_row, aux_cols);
    std::set<std::size_t> hit_classes;
    std::set<std::vector<std::string>> values;
    std::size_t matches = 0;
    for (std::size_t r = 0; r < release.num_rows(); ++r) {
      if (Project(release.rows()[r], rel_cols) != key) continue;
      ++matches;
      hit_classes.insert(row_class[r]);
      values.insert(Project(release.rows()[r], sensitive));
    }
    if (matches == 1) ++reidentified;
    if (matches > 0 && !sensitive.empty() && values.size() == 1) ++disclosed;
    for (std::size_t c : hit_classes) ++report.classes[c].linked_aux;
  }
  const auto aux_n = static_cast<double>(auxiliary.num_rows());
  if (auxiliary.num_rows() > 0) {
    report.reid_rate = static_cast<double>(reidentified) / aux_n;
    report.disclosure_rate = static_cast<double>(disclosed) / aux_n;
  }
  std::size_t targeted = 0;
  std::size_t targeted_homogeneous = 0;
  for (const auto& cls : report.classes) {
    if (cls.linked_aux == 0) continue;
    ++targeted;
    if (cls.homogeneous) ++targeted_homogeneous;
  }
  if (targeted > 0) {
    report.targeted_homogeneity_rate =
        static_cast<double>(targeted_homogeneous) /
        static_cast<double>(targeted);
  }
  return report;
}

infocore::Dist EmpiricalDist(const Table& t, const std::string& column) {
  if (t.num_rows() == 0) throw DomainError("empirical: empty table");
  const std::size_t col = t.ColumnIndex(column);
  auto domain = Domain(t, col);
  std::vector<double> probs(domain.size(), 0.0);
  for (const auto& row : t.rows()) {
    auto it = std::find(domain.begin(), domain.end(), row[col]);
    if (it == domain.end()) {
      throw DomainError("column '" + column + "' holds '" + row[col] +
                        "', outside its declared states");
    }
    probs[static_cast<std::size_t>(it - domain.begin())] += 1.0;
  }
  for (double& p : probs) p /= static_cast<double>(t.num_rows());
  return infocore::Dist::Create(std::move(domain), std::move(probs));
}

mechanisms::BoundCertificate CertifyColumnRelease(
    const Table& t, const std::string& column,
    const mechanisms::Channel& channel) {
  return mechanisms::CheckMiBound(channel, EmpiricalDist(t, column));
}

DpRelease MakeDpRelease(const Table& t, const std::string& column, double eps,
                        std::uint64_t seed) {
  const std::size_t col = t.ColumnIndex(column);
  if (t.columns()[col].role != Role::kSensitive) {
    throw DomainError("dp release: column '" + column + "' is not sensitive");
  }
  const auto prior = EmpiricalDist(t, column);
  const auto& domain = prior.outcomes();
  if (domain.size() < 2 || domain.size() > kMaxCategories) {
    throw DomainError("dp release: column '" + column + "' has " +
                      std::to_string(domain.size()) +
                      " categories; randomized response needs 2.." +
                      std::to_string(kMaxCategories));
  }
  const auto rr =
      mechanisms::RandomizedResponse(static_cast<int>(domain.size()), eps);
  // Relabel RR's "0".."k-1" onto the column's categories.
  const auto channel = mechanisms::Channel::Create(domain, domain, rr.Rows());

  Rng rng = MakeRng({seed});
  auto rows = t.rows();
  for (auto& row : rows) {
    const std::size_t x = prior.IndexOf(row[col]);
    auto dist = channel.row(x);
    row[col] = domain[SampleIndex(rng, {dist.begin(), dist.end()})];
  }
  return {t.WithRows(std::move(rows)), channel, prior,
          mechanisms::CheckMiBound(channel, prior)};
}

void to_json(nlohmann::json& j, const AnonReport& r) {
  nlohmann::json classes = nlohmann::json::array();
  for (const auto& c : r.classes) {
    classes.push_back({{"qi_values", c.qi_values},
                       {"size", c.size},
                       {"distinct_sensitive", c.distinct_sensitive},
                       {"homogeneous", c.homogeneous},
                       {"linked_aux", c.linked_aux}});
  }
  j = {{"k_achieved", r.k_achieved},
       {"homogeneity_rate", r.homogeneity_rate},
       {"reid_rate", r.reid_rate},
       {"disclosure_rate", r.disclosure_rate},
       {"targeted_homogeneity_rate", r.targeted_homogeneity_rate},
       {"shared_qi", r.shared_qi},
       {"classes", classes}};
}

}  // namespace infoflow::anonbench
