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
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "infoflow/anonbench.h"
#include "infoflow/errors.h"

namespace infoflow::anonbench {

namespace {

// One CSV record; handles quoted fields with doubled quotes. Returns false
// at end of input.
bool ReadRecord(std::istream& in, std::vector<std::string>& fields) {
  fields.clear();
  std::string field;
  bool quoted = false;
  bool any = false;
  char c;
  while (in.get(c)) {
    any = true;
    if (quoted) {
      if (c == '"') {
        if (in.peek() == '"') {
          in.get(c);
          field += '"';
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (c == '\n') {
      break;
    } else if (c != '\r') {
      field += c;
    }
  }
  if (!any) return false;
  if (quoted) throw DomainError("CSV: unterminated quoted field");
  fields.push_back(std::move(field));
  return true;
}

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

Table Table::Create(std::vector<Column> columns,
                    std::vector<std::vector<std::string>> rows) {
  if (columns.empty()) throw DomainError("Table: no columns");
  std::set<std::string> names;
  for (const auto& c : columns) {
    if (c.name.empty()) throw DomainError("Table: column with empty name");
    if (!names.insert(c.name).second) {
      throw DomainError("Table: duplicate column '" + c.name + "'");
    }
  }
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != columns.size()) {
      throw DomainError("Table: row " + std::to_string(r) + " has " +
                        std::to_string(rows[r].size()) + " fields, expected " +
                        std::to_string(columns.size()));
    }
    for (std::size_t c = 0; c < columns.size(); ++c) {
      const auto& states = columns[c].states;
      if (!states.empty() &&
          std::find(states.begin(), states.end(), rows[r][c]) == states.end()) {
        throw DomainError("Table: row " + std::to_string(r) + " value '" +
                          rows[r][c] + "' is not a declared state of '" +
                          columns[c].name + "'");
      }
    }
  }
  return Table(std::move(columns), std::move(rows));
}

std::optional<std::size_t> Table::FindColumn(const std::string& name) const {
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (columns_[i].name == name) return i;
  }
  return std::nullopt;
}

std::size_t Table::ColumnIndex(const std::string& name) const {
  auto i = FindColumn(name);
  if (!i) throw DomainError("Table: unknown column '" + name + "'");
  return *i;
}

std::vector<std::size_t> Table::ColumnsWithRole(Role role) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (columns_[i].role == role) out.push_back(i);
  }
  return out;
}

Table Table::DropColumn(const std::string& name) const {
  const std::size_t drop = ColumnIndex(name);
  std::vector<Column> columns;
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (i != drop) columns.push_back(columns_[i]);
  }
  std::vector<std::vector<std::string>> rows;
  for (const auto& row : rows_) {
    std::vector<std::string> r;
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i != drop) r.push_back(row[i]);
    }
    rows.push_back(std::move(r));
  }
  return Create(std::move(columns), std::move(rows));
}

Table Table::WithRows(std::vector<std::vector<std::string>> rows) const {
  return Create(columns_, std::move(rows));
}

std::string ToString(Role role) {
  switch (role) {
    case Role::kIdentifier:
      return "identifier";
    case Role::kQuasiIdentifier:
      return "quasi-identifier";
    case Role::kSensitive:
      return "sensitive";
  }
  return "quasi-identifier";
}

Role RoleFromString(const std::string& s) {
  for (Role r : {Role::kIdentifier, Role::kQuasiIdentifier, Role::kSensitive}) {
    if (ToString(r) == s) return r;
  }
  throw DomainError("unknown column role '" + s + "'");
}

Table ReadTable(std::istream& csv, const nlohmann::json& roles) {
  std::vector<std::string> header;
  if (!ReadRecord(csv, header)) throw DomainError("CSV: missing header row");

  if (!roles.is_object() || !roles.contains("columns") ||
      !roles.at("columns").is_array()) {
    throw DomainError("roles sidecar: expected {\"columns\": [...]}");
  }
  std::vector<Column> declared;
  try {
    for (const auto& jc : roles.at("columns")) {
      for (const auto& [key, value] : jc.items()) {
        if (key != "name" && key != "role" && key != "states") {
          throw DomainError("roles sidecar: unknown key '" + key + "'");
        }
      }
      declared.push_back(
          {jc.at("name").get<std::string>(),
           RoleFromString(jc.at("role").get<std::string>()),
           jc.value("states", std::vector<std::string>{})});
    }
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("roles sidecar: ") + e.what());
  }
  if (declared.size() != header.size()) {
    throw DomainError("roles sidecar declares " +
                      std::to_string(declared.size()) + " columns, CSV has " +
                      std::to_string(header.size()));
  }
  std::vector<Column> columns;
  for (const auto& name : header) {
    auto it = std::find_if(declared.begin(), declared.end(),
                           [&](const Column& c) { return c.name == name; });
    if (it == declared.end()) {
      throw DomainError("roles sidecar has no role for column '" + name + "'");
    }
    columns.push_back(*it);
  }

  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> fields;
  while (ReadRecord(csv, fields)) {
    if (fields.size() == 1 && fields[0].empty()) continue;  // blank line
    rows.push_back(fields);
  }
  return Table::Create(std::move(columns), std::move(rows));
}

std::string RolesPathFor(const std::string& csv_path) {
  const std::string ext = ".csv";
  if (csv_path.size() > ext.size() &&
      csv_path.compare(csv_path.size() - ext.size(), ext.size(), ext) == 0) {
    return csv_path.substr(0, csv_path.size() - ext.size()) + ".roles.json";
  }
  return csv_path + ".roles.json";
}

Table ReadTableFiles(const std::string& csv_path,
                     const std::string& roles_path) {
  std::ifstream csv(csv_path);
  if (!csv) throw DomainError("cannot open '" + csv_path + "'");
  std::ifstream roles_in(roles_path);
  if (!roles_in) {
    throw DomainError("missing role sidecar '" + roles_path + "'");
  }
  nlohmann::json roles;
  try {
    roles = nlohmann::json::parse(roles_in);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError("roles sidecar '" + roles_path + "': " + e.what());
  }
  return ReadTable(csv, roles);
}

void WriteCsv(std::ostream& out, const Table& t) {
  for (std::size_t i = 0; i < t.columns().size(); ++i) {
    out << (i ? "," : "") << CsvField(t.columns()[i].name);
  }
  out << '\n';
  for (const auto& row : t.rows()) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << (i ? "," : "") << CsvField(row[i]);
    }
    out << '\n';
  }
}

}  // namespace infoflow::anonbench
