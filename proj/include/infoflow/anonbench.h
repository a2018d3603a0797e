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

#ifndef INFOFLOW_ANONBENCH_H_
#define INFOFLOW_ANONBENCH_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "infoflow/infocore.h"
#include "infoflow/mechanisms.h"
#include "json.hpp"

namespace infoflow::anonbench {

enum class Role { kIdentifier, kQuasiIdentifier, kSensitive };

struct Column {
  std::string name;
  Role role = Role::kQuasiIdentifier;
  // Declared value domain; when empty the observed values are the domain.
  std::vector<std::string> states;
};

class Table {
 public:
  // Rejects duplicate column names and ragged rows.
  static Table Create(std::vector<Column> columns,
                      std::vector<std::vector<std::string>> rows);

  const std::vector<Column>& columns() const { return columns_; }
  const std::vector<std::vector<std::string>>& rows() const { return rows_; }
  std::size_t num_rows() const { return rows_.size(); }

  std::optional<std::size_t> FindColumn(const std::string& name) const;
  std::size_t ColumnIndex(const std::string& name) const;
  std::vector<std::size_t> ColumnsWithRole(Role role) const;

  Table DropColumn(const std::string& name) const;
  Table WithRows(std::vector<std::vector<std::string>> rows) const;

 private:
  Table(std::vector<Column> columns, std::vector<std::vector<std::string>> rows)
      : columns_(std::move(columns)), rows_(std::move(rows)) {}

  std::vector<Column> columns_;
  std::vector<std::vector<std::string>> rows_;
};

// Smallest equivalence class over the quasi-identifier columns.
std::size_t KAnonymityLevel(const Table& t);

struct ClassReport {
  std::vector<std::string> qi_values;
  std::size_t size = 0;
  std::size_t distinct_sensitive = 0;
  bool homogeneous = false;
  std::size_t linked_aux = 0;  // auxiliary rows joined onto this class
};

struct AnonReport {
  std::size_t k_achieved = 0;
  // Fraction of release classes with a single sensitive value.
  double homogeneity_rate = 0.0;
  // Fraction of auxiliary rows matching exactly one release row.
  double reid_rate = 0.0;
  // Fraction of auxiliary rows whose matching release rows all share one
  // sensitive value, i.e. the attribute is learnt without re-identification.
  double disclosure_rate = 0.0;
  // Fraction of classes hit by at least one auxiliary row that are
  // homogeneous.
  double targeted_homogeneity_rate = 0.0;
  std::vector<std::string> shared_qi;
  std::vector<ClassReport> classes;
};

// Joins `auxiliary` onto `release` over the quasi-identifiers both share.
// Throws DomainError when there is no shared quasi-identifier.
AnonReport LinkageAttack(const Table& release, const Table& auxiliary);

// Empirical distribution of a column over its declared or observed domain
// (observed values sorted).
infocore::Dist EmpiricalDist(const Table& t, const std::string& column);

// Certificate for releasing `column` through `channel`, using the column's
// empirical distribution as the prior.
mechanisms::BoundCertificate CertifyColumnRelease(
    const Table& t, const std::string& column,
    const mechanisms::Channel& channel);

struct DpRelease {
  Table table;
  mechanisms::Channel channel;
  infocore::Dist prior;
  mechanisms::BoundCertificate certificate;
};

inline constexpr std::size_t kMaxCategories = 64;

// Replaces the sensitive column with a k-ary randomized-response draw per
// row. Throws DomainError for a non-sensitive or non-categorical column.
DpRelease MakeDpRelease(const Table& t, const std::string& column, double eps,
                        std::uint64_t seed);

// --- I/O ---------------------------------------------------------------------

std::string ToString(Role role);
Role RoleFromString(const std::string& s);

// Parses CSV text (header row first). Roles come from a sidecar of the form
// {"columns": [{"name": ..., "role": ..., "states": [...]}, ...]} which must
// name exactly the CSV header columns.
Table ReadTable(std::istream& csv, const nlohmann::json& roles);
Table ReadTableFiles(const std::string& csv_path,
                     const std::string& roles_path);
// Sidecar path convention: "data.csv" -> "data.roles.json".
std::string RolesPathFor(const std::string& csv_path);
void WriteCsv(std::ostream& out, const Table& t);

void to_json(nlohmann::json& j, const AnonReport& r);

}  // namespace infoflow::anonbench

#endif  // INFOFLOW_ANONBENCH_H_
