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

// Command-line front end. Exit codes: 0 ok, 1 information bound violated,
// 2 input error, 3 capacity exceeded.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "infoflow/anonbench.h"
#include "infoflow/causalnet.h"
#include "infoflow/errors.h"
#include "infoflow/infocore.h"
#include "infoflow/mechanisms.h"
#include "infoflow/society.h"
#include "json.hpp"

namespace {

using nlohmann::json;
using namespace infoflow;

constexpr int kExitOk = 0;
constexpr int kExitBoundViolated = 1;
constexpr int kExitInput = 2;
constexpr int kExitCapacity = 3;

struct GlobalOptions {
  std::uint64_t seed = 0;
  bool seed_given = false;
  double tolerance = infocore::kProbTolerance;
  std::string format = "json";
  std::string output;
};

json ReadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw DomainError("malformed JSON in '" + path + "': " + e.what());
  }
}

// "key=value" tokens, e.g. {"k=2", "eps=1.0986"}.
std::map<std::string, std::string> KeyValues(
    const std::vector<std::string>& tokens, const std::string& what) {
  std::map<std::string, std::string> out;
  for (const auto& tok : tokens) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw DomainError(what + ": expected key=value, got '" + tok + "'");
    }
    out[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  return out;
}

double ParseDouble(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw DomainError(what + ": not a number: '" + s + "'");
  }
}

int ParseInt(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw DomainError(what + ": not an integer: '" + s + "'");
  }
}

mechanisms::Channel RrFromTokens(const std::vector<std::string>& tokens) {
  auto kv = KeyValues(tokens, "--rr");
  for (const auto& [key, value] : kv) {
    if (key != "k" && key != "eps") {
      throw DomainError("--rr: unknown key '" + key + "'");
    }
  }
  if (!kv.contains("k") || !kv.contains("eps")) {
    throw DomainError("--rr needs k=<int> and eps=<real>");
  }
  return mechanisms::RandomizedResponse(ParseInt(kv["k"], "--rr k"),
                                        ParseDouble(kv["eps"], "--rr eps"));
}

infocore::Dist PriorFor(const std::string& spec,
                        const mechanisms::Channel& channel) {
  if (spec.empty() || spec == "uniform") {
    return infocore::Dist::Uniform(channel.inputs());
  }
  return infocore::DistFromJson(ReadJsonFile(spec));
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw DomainError("cannot write '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

std::string Num(double v) { return json(v).dump(); }

void PrintCertificate(std::ostream& out, const GlobalOptions& g,
                      const mechanisms::BoundCertificate& cert,
                      const mechanisms::Channel* channel) {
  if (g.format == "csv") {
    out << "eps,unbounded,mi_sh,bound_sh,holds,witness_x,witness_x_prime,"
           "witness_y\n"
        << (cert.unbounded ? "" : Num(cert.eps)) << ','
        << (cert.unbounded ? "true" : "false") << ',' << Num(cert.mi_sh) << ','
        << (cert.unbounded ? "" : Num(cert.bound_sh)) << ','
        << (cert.holds ? "true" : "false") << ',' << cert.witness.x << ','
        << cert.witness.x_prime << ',' << cert.witness.y << '\n';
    return;
  }
  json j = {{"certificate", cert}};
  if (channel != nullptr) j["channel"] = *channel;
  out << j.dump(2) << '\n';
}

// --- Subcommands --------------------------------------------------------------

struct VerifyBoundArgs {
  std::string channel_file;
  std::vector<std::string> rr;
  std::string prior = "uniform";
};

int RunVerifyBound(const GlobalOptions& g, const VerifyBoundArgs& a) {
  if (a.channel_file.empty() == a.rr.empty()) {
    throw DomainError("verify-bound needs exactly one of --channel or --rr");
  }
  const auto channel = a.rr.empty()
                           ? mechanisms::ChannelFromJson(ReadJsonFile(a.channel_file))
                           : RrFromTokens(a.rr);
  const auto cert =
      mechanisms::CheckMiBound(channel, PriorFor(a.prior, channel), g.tolerance);
  Output out(g.output);
  PrintCertificate(out.stream(), g, cert, nullptr);
  return cert.holds ? kExitOk : kExitBoundViolated;
}

struct SweepArgs {
  std::size_t cases = 1000;
  std::size_t max_inputs = 6;
  std::size_t max_outputs = 6;
  std::string kind = "mi-bound";
};

int RunSweep(const GlobalOptions& g, const SweepArgs& a) {
  mechanisms::SweepOptions opts;
  opts.seed = g.seed;
  opts.cases = a.cases;
  opts.max_inputs = a.max_inputs;
  opts.max_outputs = a.max_outputs;
  opts.tolerance = g.tolerance;
  mechanisms::SweepReport report;
  if (a.kind == "mi-bound") {
    report = mechanisms::RunMiBoundSweep(opts);
  } else if (a.kind == "post-processing") {
    report = mechanisms::RunPostProcessingSweep(opts);
  } else if (a.kind == "composition") {
    report = mechanisms::RunCompositionSweep(opts);
  } else {
    throw DomainError("sweep: unknown kind '" + a.kind + "'");
  }
  Output out(g.output);
  if (g.format == "csv") {
    out.stream() << "kind,cases,violations,min_slack\n"
                 << a.kind << ',' << report.cases << ',' << report.violations
                 << ',' << Num(report.min_slack) << '\n';
  } else {
    json j = report;
    j["kind"] = a.kind;
    j["seed"] = g.seed;
    out.stream() << j.dump(2) << '\n';
  }
  return report.ok() ? kExitOk : kExitBoundViolated;
}

struct LeakageArgs {
  std::string net_file;
  std::string message;
  std::string observe;
  std::string scenario;
  int voters = 3;
  bool emit_net = false;
};

void PrintProfile(std::ostream& out, const GlobalOptions& g,
                  const causalnet::LeakageProfile& profile) {
  const auto sorted = causalnet::SortedByLeakage(profile);
  if (g.format == "csv") {
    out << "node,mi_sh" << (profile.observed ? ",posterior_entropy_drop" : "")
        << '\n';
    for (const auto& n : sorted) {
      out << n.node << ',' << Num(n.mi_sh);
      if (n.posterior_entropy_drop) out << ',' << Num(*n.posterior_entropy_drop);
      out << '\n';
    }
    return;
  }
  json j = profile;
  j["nodes"] = sorted;
  out << j.dump(2) << '\n';
}

int RunLeakage(const GlobalOptions& g, const LeakageArgs& a) {
  Output out(g.output);
  std::optional<std::string> observed;
  if (!a.observe.empty()) observed = a.observe;

  if (!a.scenario.empty()) {
    if (!a.net_file.empty()) {
      throw DomainError("leakage: --scenario and --net are exclusive");
    }
    if (a.scenario == "ballot") {
      const auto sc = causalnet::MakeBallotScenario(a.voters);
      if (a.emit_net) {
        if (!sc.net) causalnet::BallotNet(a.voters);  // raises CapacityError
        out.stream() << json(*sc.net).dump(2) << '\n';
        return kExitOk;
      }
      if (g.format == "csv") {
        out.stream() << "tally,p_tally,p_v1_yes,h_v1\n";
        for (const auto& p : sc.report.posteriors) {
          out.stream() << p.tally << ',' << Num(p.p_tally) << ','
                       << Num(p.p_v1_yes) << ',' << Num(p.h_v1) << '\n';
        }
      } else {
        out.stream() << json({{"ballot", sc.report}}).dump(2) << '\n';
      }
      return kExitOk;
    }
    if (a.scenario == "twins") {
      const auto sc = causalnet::MakeTwinsScenario();
      if (a.emit_net) {
        out.stream() << json(sc.net).dump(2) << '\n';
        return kExitOk;
      }
      if (g.format == "csv") {
        json r = sc.report;
        out.stream() << "quantity,value\n";
        for (const auto& [k, v] : r.items()) {
          out.stream() << k << ',' << v.dump() << '\n';
        }
      } else {
        out.stream() << json({{"twins", sc.report}}).dump(2) << '\n';
      }
      return kExitOk;
    }
    if (a.scenario == "fork-collider") {
      const auto net = causalnet::ForkColliderGraph(g.seed_given ? g.seed : 42);
      if (a.emit_net) {
        out.stream() << json(net).dump(2) << '\n';
        return kExitOk;
      }
      PrintProfile(out.stream(), g,
                   causalnet::ComputeLeakageProfile(
                       net, a.message.empty() ? "M" : a.message, observed));
      return kExitOk;
    }
    throw DomainError("leakage: unknown scenario '" + a.scenario + "'");
  }

  if (a.net_file.empty() || a.message.empty()) {
    throw DomainError("leakage needs --net and --message, or --scenario");
  }
  const auto net = causalnet::BayesNetFromJson(ReadJsonFile(a.net_file));
  PrintProfile(out.stream(), g,
               causalnet::ComputeLeakageProfile(net, a.message, observed));
  return kExitOk;
}

struct SimulateArgs {
  std::string scenario_file;
  std::string log_file;
};

int RunSimulate(const GlobalOptions& g, const SimulateArgs& a) {
  json j = ReadJsonFile(a.scenario_file);
  // A scenario may reference its attribution net by a path relative to the
  // scenario file.
  if (j.is_object() && j.contains("attribution") &&
      j["attribution"].is_object() && j["attribution"].contains("net_file")) {
    auto& att = j["attribution"];
    const auto base =
        std::filesystem::path(a.scenario_file).parent_path();
    att["net"] = ReadJsonFile((base / att["net_file"].get<std::string>()).string());
    att.erase("net_file");
  }
  auto scenario = society::ScenarioFromJson(j);
  if (g.seed_given) scenario.seed = g.seed;
  const auto result = society::RunScenario(scenario);

  if (!a.log_file.empty()) {
    std::ofstream log(a.log_file);
    if (!log) throw DomainError("cannot write '" + a.log_file + "'");
    society::WriteEventsJsonl(log, result.events);
  }
  Output out(g.output);
  if (g.format == "csv") {
    society::WriteEventsCsv(out.stream(), result.events);
  } else {
    json r = result;
    r["seed"] = scenario.seed;
    r["ticks"] = scenario.ticks;
    out.stream() << r.dump(2) << '\n';
  }
  return kExitOk;
}

struct AnonArgs {
  std::string release;
  std::string release_roles;
  std::string aux;
  std::string aux_roles;
  std::vector<std::string> dp;
  std::string column;
  std::string released_csv;
};

int RunAnon(const GlobalOptions& g, const AnonArgs& a) {
  const auto release = anonbench::ReadTableFiles(
      a.release, a.release_roles.empty() ? anonbench::RolesPathFor(a.release)
                                         : a.release_roles);
  Output out(g.output);
  if (!a.dp.empty()) {
    if (!a.aux.empty()) throw DomainError("anon: --aux and --dp are exclusive");
    auto kv = KeyValues(a.dp, "--dp");
    if (kv.size() != 1 || !kv.contains("eps")) {
      throw DomainError("--dp expects eps=<real>");
    }
    std::string column = a.column;
    if (column.empty()) {
      const auto sensitive =
          release.ColumnsWithRole(anonbench::Role::kSensitive);
      if (sensitive.size() != 1) {
        throw DomainError("anon --dp: name the column with --column");
      }
      column = release.columns()[sensitive[0]].name;
    }
    const auto dp = anonbench::MakeDpRelease(
        release, column, ParseDouble(kv["eps"], "--dp eps"), g.seed);
    if (!a.released_csv.empty()) {
      std::ofstream csv(a.released_csv);
      if (!csv) throw DomainError("cannot write '" + a.released_csv + "'");
      anonbench::WriteCsv(csv, dp.table);
    }
    if (g.format == "csv") {
      PrintCertificate(out.stream(), g, dp.certificate, nullptr);
    } else {
      out.stream() << json({{"column", column},
                            {"prior", dp.prior},
                            {"certificate", dp.certificate},
                            {"per_record_bound_sh", dp.certificate.bound_sh}})
                          .dump(2)
                   << '\n';
    }
    return dp.certificate.holds ? kExitOk : kExitBoundViolated;
  }
  if (a.aux.empty()) throw DomainError("anon needs --aux or --dp");
  const auto aux = anonbench::ReadTableFiles(
      a.aux, a.aux_roles.empty() ? anonbench::RolesPathFor(a.aux) : a.aux_roles);
  const auto report = anonbench::LinkageAttack(release, aux);
  if (g.format == "csv") {
    out.stream() << "k_achieved,homogeneity_rate,reid_rate,disclosure_rate,"
                    "targeted_homogeneity_rate\n"
                 << report.k_achieved << ',' << Num(report.homogeneity_rate)
                 << ',' << Num(report.reid_rate) << ','
                 << Num(report.disclosure_rate) << ','
                 << Num(report.targeted_homogeneity_rate) << '\n';
  } else {
    out.stream() << json(report).dump(2) << '\n';
  }
  return kExitOk;
}

struct ComposeArgs {
  std::vector<std::string> channel_files;
  std::vector<std::string> rr;
  std::string prior = "uniform";
};

int RunCompose(const GlobalOptions& g, const ComposeArgs& a) {
  std::vector<mechanisms::Channel> parts;
  for (const auto& f : a.channel_files) {
    parts.push_back(mechanisms::ChannelFromJson(ReadJsonFile(f)));
  }
  for (std::size_t i = 0; i + 1 < a.rr.size(); i += 2) {
    parts.push_back(RrFromTokens({a.rr[i], a.rr[i + 1]}));
  }
  if (parts.size() < 2) throw DomainError("compose needs at least two channels");
  auto composed = parts[0];
  double eps_sum = 0.0;
  bool any_unbounded = false;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const auto r = mechanisms::RealizedEpsilon(parts[i]);
    any_unbounded = any_unbounded || r.unbounded;
    eps_sum += r.eps;
    if (i > 0) composed = mechanisms::Compose(composed, parts[i]);
  }
  const auto eps = mechanisms::RealizedEpsilon(composed);
  const auto cert = mechanisms::CheckMiBound(
      composed, PriorFor(a.prior, composed), g.tolerance);
  const bool additive =
      any_unbounded || (!eps.unbounded && eps.eps <= eps_sum + g.tolerance);
  Output out(g.output);
  if (g.format == "csv") {
    PrintCertificate(out.stream(), g, cert, nullptr);
  } else {
    json j = {{"channel", composed},
              {"realized_eps", eps},
              {"sum_of_parts_eps",
               any_unbounded ? json(nullptr) : json(eps_sum)},
              {"certificate", cert}};
    out.stream() << j.dump(2) << '\n';
  }
  return cert.holds && additive ? kExitOk : kExitBoundViolated;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantitative information-flow and privacy toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  GlobalOptions g;
  auto* seed_opt = app.add_option("--seed", g.seed, "RNG seed (default 0)");
  app.add_option("--tolerance", g.tolerance, "Slack for bound checks")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--format", g.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--output,-o", g.output, "Write the report here");

  VerifyBoundArgs vb;
  auto* verify = app.add_subcommand(
      "verify-bound", "Check a channel's mutual information against its DP bound");
  verify->add_option("--channel", vb.channel_file, "Channel JSON file");
  verify->add_option("--rr", vb.rr, "Randomized response: k=<int> eps=<real>")
      ->expected(2);
  verify->add_option("--prior", vb.prior, "'uniform' or a Dist JSON file");

  SweepArgs sw;
  auto* sweep = app.add_subcommand("sweep", "Seeded property sweep");
  sweep->add_option("--cases", sw.cases);
  sweep->add_option("--max-inputs", sw.max_inputs)->check(CLI::Range(2, 64));
  sweep->add_option("--max-outputs", sw.max_outputs)->check(CLI::Range(2, 64));
  sweep->add_option("--kind", sw.kind)
      ->check(CLI::IsMember({"mi-bound", "post-processing", "composition"}));

  LeakageArgs lk;
  auto* leakage =
      app.add_subcommand("leakage", "Per-node leakage of a message node");
  leakage->add_option("--net", lk.net_file, "Bayesian network JSON");
  leakage->add_option("--message", lk.message, "Message node");
  leakage->add_option("--observe", lk.observe, "Observed message state");
  leakage->add_option("--scenario", lk.scenario, "fork-collider | twins | ballot");
  leakage->add_option("--n", lk.voters, "Voters for --scenario ballot");
  leakage->add_flag("--emit-net", lk.emit_net, "Print the scenario net");

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Run a society scenario");
  simulate->add_option("scenario", sim.scenario_file)->required();
  simulate->add_option("--log", sim.log_file, "Write events as JSON lines");

  AnonArgs an;
  auto* anon = app.add_subcommand("anon", "Linkage attack or DP release");
  anon->add_option("release", an.release, "Release CSV")->required();
  anon->add_option("--roles", an.release_roles, "Release role sidecar");
  anon->add_option("--aux", an.aux, "Auxiliary CSV");
  anon->add_option("--aux-roles", an.aux_roles, "Auxiliary role sidecar");
  anon->add_option("--dp", an.dp, "eps=<real>")->expected(1);
  anon->add_option("--column", an.column, "Sensitive column for --dp");
  anon->add_option("--released", an.released_csv, "Write the DP table here");

  ComposeArgs cp;
  auto* compose =
      app.add_subcommand("compose", "Compose channels and check the bound");
  compose->add_option("--channel", cp.channel_files, "Channel JSON file")
      ->take_all();
  compose->add_option("--rr", cp.rr, "k=<int> eps=<real>")
      ->expected(2)
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  compose->add_option("--prior", cp.prior, "'uniform' or a Dist JSON file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }
  g.seed_given = seed_opt->count() > 0;

  try {
    if (*verify) return RunVerifyBound(g, vb);
    if (*sweep) return RunSweep(g, sw);
    if (*leakage) return RunLeakage(g, lk);
    if (*simulate) return RunSimulate(g, sim);
    if (*anon) return RunAnon(g, an);
    if (*compose) return RunCompose(g, cp);
  } catch (const CapacityError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCapacity;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}
