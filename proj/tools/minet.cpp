// minet: command-line front end for the workbench.

#include "minet/apov/crypto.hpp"
#include "minet/core/error.hpp"
#include "minet/model/perf-model.hpp"
#include "minet/registry/demo.hpp"
#include "minet/registry/service.hpp"
#include "minet/sim/simulator.hpp"
#include "minet/tunnel/packet.hpp"
#include "minet/tunnel/scenario.hpp"
#include "minet/workload/bench.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace minet::cli {

namespace {

/// Exit status for a run whose checks failed.
constexpr int CHECK_FAILED = 1;
/// Exit status for bad flags or bad configuration.
constexpr int USAGE = 2;

struct Common
{
  std::string out = ".";
  std::string config;
};

void
addCommon(CLI::App* cmd, Common& c)
{
  cmd->add_option("--out", c.out, "Directory for report files")->capture_default_str();
  cmd->add_option("--config", c.config, "JSON file whose keys override the flags");
}

std::string
readFile(const std::string& path)
{
  std::ifstream in(path);
  if (!in)
    throw Error(Errc::ConfigInvalid, "cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Applies `setters` to the keys of the JSON object in `path`.
void
applyConfig(const std::string& path, const std::map<std::string, std::function<void(const json&)>>& setters)
{
  if (path.empty())
    return;
  json doc;
  try {
    doc = json::parse(readFile(path));
  }
  catch (const json::exception& e) {
    throw Error(Errc::ConfigInvalid, path + ": " + e.what());
  }
  if (!doc.is_object())
    throw Error(Errc::ConfigInvalid, path + ": expected a JSON object");
  for (const auto& [key, value] : doc.items()) {
    auto it = setters.find(key);
    if (it == setters.end())
      throw Error(Errc::ConfigInvalid, path + ": unknown key '" + key + "'");
    try {
      it->second(value);
    }
    catch (const json::exception& e) {
      throw Error(Errc::ConfigInvalid, path + ": bad value for '" + key + "': " + e.what());
    }
  }
}

template<typename T>
std::function<void(const json&)>
into(T& target)
{
  return [&target](const json& v) { target = v.get<T>(); };
}

std::ofstream
openReport(const std::string& dir, const std::string& file)
{
  fs::create_directories(dir);
  auto path = fs::path(dir) / file;
  std::ofstream os(path);
  if (!os)
    throw Error(Errc::InvalidState, "cannot write '" + path.string() + "'");
  return os;
}

std::string
fmt(double v, int precision = 3)
{
  std::ostringstream os;
  os << std::fixed << std::setprecision(precision) << v;
  return os.str();
}

// fib-bench

struct FibBenchArgs
{
  Common common;
  std::size_t entries = 100'000;
  std::size_t queries = 50'000;
  std::string mode = "miss";
  std::vector<std::uint32_t> lengths{6};
  std::vector<double> means{3};
  std::uint32_t alphabet = workload::WorkloadSpec{}.alphabet;
  std::uint32_t spread = 3;
  std::uint64_t seed = 1;
  std::vector<std::size_t> scaling;
};

int
runFibBench(FibBenchArgs& a)
{
  applyConfig(a.common.config, {{"entries", into(a.entries)},
                                {"queries", into(a.queries)},
                                {"mode", into(a.mode)},
                                {"len", into(a.lengths)},
                                {"M", into(a.means)},
                                {"alphabet", into(a.alphabet)},
                                {"spread", into(a.spread)},
                                {"seed", into(a.seed)},
                                {"scaling", into(a.scaling)}});
  auto mode = workload::parseQueryMode(a.mode);
  std::vector<workload::WorkloadSpec> specs;
  for (double m : a.means)
    for (auto n : a.lengths) {
      workload::WorkloadSpec s;
      s.entryCount = a.entries;
      s.queryCount = a.queries;
      s.mode = mode;
      s.queryLength = n;
      s.meanStoredLength = m;
      s.alphabet = a.alphabet;
      s.lengthSpread = a.spread;
      s.seed = a.seed;
      s.validate();
      specs.push_back(s);
    }

  std::cout << "# " << workload::SCALE_NOTE << '\n';
  std::cout << "mode   M     N   binary  linear  ratio    mismatches\n";
  std::vector<workload::BenchReport> reports;
  bool ok = true;
  for (const auto& s : specs) {
    auto r = workload::runBench(s);
    std::cout << std::left << std::setw(6) << workload::to_string(s.mode) << ' ' << std::setw(5)
              << fmt(s.meanStoredLength, 1) << ' ' << std::setw(3) << s.queryLength << ' ' << std::setw(7)
              << fmt(r.binaryAvgProbes) << ' ' << std::setw(7) << fmt(r.linearAvgProbes) << ' ' << std::setw(8)
              << fmt(100 * r.probeThroughputRatio, 1) + "%" << ' ' << r.mismatches << '\n';
    ok &= r.mismatches == 0;
    if (s.mode == workload::QueryMode::Miss)
      ok &= r.linearAvgProbes == s.queryLength;
    reports.push_back(r);
  }
  auto csv = openReport(a.common.out, "fib-bench.csv");
  workload::writeBenchCsv(csv, reports);
  auto js = openReport(a.common.out, "fib-bench.json");
  workload::writeBenchJson(js, reports);

  if (!a.scaling.empty()) {
    auto os = openReport(a.common.out, "fib-build.csv");
    os << "entries,seconds,ratio_to_first\n";
    json rows = json::array();
    double first = 0;
    for (auto n : a.scaling) {
      double t = workload::timeBuild(n, a.seed);
      ok &= t >= 0;
      if (first == 0)
        first = t;
      os << n << ',' << t << ',' << t / first << '\n';
      rows.push_back({{"entries", n}, {"seconds", t}, {"ratio_to_first", t / first}});
      std::cout << "build " << n << " entries: " << fmt(t) << " s (x" << fmt(t / first, 2) << ")\n";
    }
    auto sj = openReport(a.common.out, "fib-build.json");
    sj << json{{"note", std::string(workload::SCALE_NOTE)}, {"points", rows}}.dump(2) << '\n';
  }
  return ok ? 0 : CHECK_FAILED;
}

// fib-check

struct FibCheckArgs
{
  Common common;
  std::size_t ops = 10'000;
  std::size_t lookups = 10'000;
  std::uint32_t alphabet = 100;
  std::size_t checkEvery = 1'000;
  std::uint64_t seed = 1;
};

int
runFibCheckCommand(FibCheckArgs& a)
{
  applyConfig(a.common.config, {{"ops", into(a.ops)},
                                {"lookups", into(a.lookups)},
                                {"alphabet", into(a.alphabet)},
                                {"check_every", into(a.checkEvery)},
                                {"seed", into(a.seed)}});
  if (a.alphabet == 0 || a.checkEvery == 0)
    throw Error(Errc::ConfigInvalid, "alphabet and check interval must be positive");
  auto r = workload::runFibCheck(a.ops, a.lookups, a.alphabet, a.seed, a.checkEvery);
  json j{{"ops", r.ops},
         {"lookups", r.lookups},
         {"integrity_checks", r.integrityChecks},
         {"violations", r.violations},
         {"mismatches", r.mismatches},
         {"probe_bound_exceeded", r.probeBoundExceeded},
         {"hits", r.hits},
         {"ok", r.ok()},
         {"note", std::string(workload::SCALE_NOTE)}};
  auto os = openReport(a.common.out, "fib-check.json");
  os << j.dump(2) << '\n';
  auto csv = openReport(a.common.out, "fib-check.csv");
  csv << "ops,lookups,integrity_checks,violations,mismatches,probe_bound_exceeded,hits\n"
      << r.ops << ',' << r.lookups << ',' << r.integrityChecks << ',' << r.violations.size() << ',' << r.mismatches
      << ',' << r.probeBoundExceeded << ',' << r.hits << '\n';
  std::cout << r.ops << " ops, " << r.lookups << " lookups, " << r.integrityChecks << " integrity checks: "
            << r.violations.size() << " violations, " << r.mismatches << " mismatches\n";
  for (const auto& v : r.violations)
    std::cout << "  " << v << '\n';
  return r.ok() ? 0 : CHECK_FAILED;
}

// consensus-sim

struct ConsensusArgs
{
  Common common;
  std::uint32_t nodes = 3;
  std::uint64_t rounds = 10;
  std::uint32_t K = 10000;
  double band = 125e6;
  std::string compute = "step-fits";
  std::uint64_t seed = 1;
  std::vector<std::string> faults;
};

sim::FaultSpec
parseFault(const std::string& text)
{
  // node:behavior[:round]
  auto first = text.find(':');
  if (first == std::string::npos)
    throw Error(Errc::ConfigInvalid, "fault '" + text + "' is not node:behavior[:round]");
  auto second = text.find(':', first + 1);
  sim::FaultSpec f;
  try {
    f.node = static_cast<std::uint32_t>(std::stoul(text.substr(0, first)));
    if (second != std::string::npos)
      f.round = std::stoull(text.substr(second + 1));
  }
  catch (const std::exception&) {
    throw Error(Errc::ConfigInvalid, "fault '" + text + "' has a bad number");
  }
  auto behavior = text.substr(first + 1, second == std::string::npos ? std::string::npos : second - first - 1);
  for (auto b : {sim::FaultSpec::Behavior::CrashAtRound, sim::FaultSpec::Behavior::InvalidBlocks,
                 sim::FaultSpec::Behavior::DissentingVotes})
    if (behavior == sim::to_string(b)) {
      f.behavior = b;
      return f;
    }
  throw Error(Errc::ConfigInvalid, "unknown fault behavior '" + behavior + "'");
}

int
runConsensus(ConsensusArgs& a)
{
  sim::SimConfig c;
  c.nodeCount = a.nodes;
  c.rounds = a.rounds;
  c.K = a.K;
  if (!(a.band >= 1))
    throw Error(Errc::ConfigInvalid, "band must be at least 1 byte/s");
  c.band = static_cast<std::uint64_t>(a.band);
  c.compute = sim::parseComputeModel(a.compute);
  c.seed = a.seed;
  for (const auto& f : a.faults)
    c = sim::injectFault(c, parseFault(f));
  if (!a.common.config.empty())
    c = sim::parseSimConfig(readFile(a.common.config), c);
  c.validate();

  auto res = sim::runRounds(c);
  auto csv = openReport(a.common.out, "consensus-rounds.csv");
  res.writeCsv(csv);
  auto js = openReport(a.common.out, "consensus-summary.json");
  res.writeSummaryJson(js, c);

  std::cout << res.rounds.size() << " of " << c.rounds << " rounds, n = " << c.nodeCount << ", compute "
            << sim::to_string(c.compute) << '\n';
  if (!res.rounds.empty())
    std::cout << "mean round " << fmt(res.meanRoundTime(), 6) << " s, throughput " << fmt(res.throughput(), 0)
              << " tx/s, committed " << res.committedTxs << '\n';
  std::cout << "divergences " << res.divergences << '\n';
  if (res.stalled)
    std::cout << "stalled: " << res.diagnostic << '\n';
  return res.divergences == 0 ? 0 : CHECK_FAILED;
}

// model-eval / model-sweep

struct ModelEvalArgs
{
  Common common;
  double n = 3;
  double a = 1;
  double band = 125e6;
  double K = 10000;
};

int
runModelEval(ModelEvalArgs& a)
{
  applyConfig(a.common.config,
              {{"n", into(a.n)}, {"a", into(a.a)}, {"band", into(a.band)}, {"K", into(a.K)}});
  auto p = model::ModelParams::prototype(a.n);
  p.a = a.a;
  p.band = a.band;
  p.K = a.K;
  auto t = model::evaluate(p);
  auto fitted = model::evaluatePoint(a.n, a.a, a.band);

  auto os = openReport(a.common.out, "model-eval.csv");
  os.precision(10);
  os << "n,a,band,t_tran1,t_tran2,t_tran3,t_tran_structural,t_comp1,t_comp2,t_comp3,t_comp4,t_comp_steps,"
        "t_tran,t_comp,t_cons,throughput\n"
     << a.n << ',' << a.a << ',' << a.band << ',' << t.tTran1 << ',' << t.tTran2 << ',' << t.tTran3 << ','
     << t.tTran << ',' << t.tComp1 << ',' << t.tComp2 << ',' << t.tComp3 << ',' << t.tComp4 << ',' << t.tComp
     << ',' << fitted.tTran << ',' << fitted.tComp << ',' << fitted.tCons << ',' << t.throughput << '\n';

  json j{{"n", a.n},
         {"a", a.a},
         {"band", a.band},
         {"K", a.K},
         {"structural", {{"t_tran1", t.tTran1},
                         {"t_tran2", t.tTran2},
                         {"t_tran3", t.tTran3},
                         {"t_tran", t.tTran},
                         {"t_comp1", t.tComp1},
                         {"t_comp2", t.tComp2},
                         {"t_comp3", t.tComp3},
                         {"t_comp4", t.tComp4},
                         {"t_comp", t.tComp},
                         {"t_cons", t.tCons}}},
         {"fitted", {{"t_tran", fitted.tTran}, {"t_comp", fitted.tComp}, {"t_cons", fitted.tCons}}},
         {"t_comp_scaled", t.tCompScaled},
         {"t_cons_prime", t.tConsPrime},
         {"throughput", t.throughput}};
  auto js = openReport(a.common.out, "model-eval.json");
  js << j.dump(2) << '\n';

  std::cout << "t_cons " << fmt(fitted.tCons, 5) << " s (computation " << fmt(fitted.tComp, 5)
            << " + transmission " << fmt(fitted.tTran, 5) << ")\n"
            << "per-step: t_tran " << fmt(t.tTran, 5) << " s, t_comp " << fmt(t.tComp, 5) << " s, t_cons "
            << fmt(t.tCons, 5) << " s\n"
            << "t_comp_scaled " << fmt(t.tCompScaled, 5) << " s, t_cons_prime " << fmt(t.tConsPrime, 5)
            << " s, throughput limit " << fmt(t.throughput, 0) << " tx/s\n";
  return 0;
}

struct ModelSweepArgs
{
  Common common;
  double nMin = 3;
  double nMax = 200;
  double nStep = 1;
  std::vector<double> as{1, 2, 4, 8};
  std::vector<double> bands{125e6, 250e6, 1.25e9};
};

int
runModelSweep(ModelSweepArgs& a)
{
  applyConfig(a.common.config, {{"n_min", into(a.nMin)},
                                {"n_max", into(a.nMax)},
                                {"n_step", into(a.nStep)},
                                {"a", into(a.as)},
                                {"band", into(a.bands)}});
  if (!(a.nStep > 0) || a.nMax < a.nMin || a.as.empty() || a.bands.empty())
    throw Error(Errc::ConfigInvalid, "sweep ranges must be non-empty");
  std::vector<double> ns;
  for (double n = a.nMin; n <= a.nMax + 1e-9; n += a.nStep)
    ns.push_back(n);
  auto rows = model::sweepGrid(ns, a.as, a.bands);
  auto os = openReport(a.common.out, "model-sweep.csv");
  model::writeSweepCsv(os, rows);

  json best = json::array();
  for (double av : a.as)
    for (double bv : a.bands) {
      const model::SweepRow* top = nullptr;
      for (const auto& r : rows)
        if (r.a == av && r.band == bv && (!top || r.throughput > top->throughput))
          top = &r;
      best.push_back({{"a", av}, {"band", bv}, {"best_n", top->n}, {"throughput", top->throughput}});
    }
  json j{{"points", rows.size()}, {"n_min", a.nMin}, {"n_max", a.nMax}, {"n_step", a.nStep}, {"peaks", best}};
  auto js = openReport(a.common.out, "model-sweep.json");
  js << j.dump(2) << '\n';
  std::cout << rows.size() << " points written\n";
  for (const auto& b : best)
    std::cout << "a = " << b["a"].get<double>() << ", band = " << b["band"].get<double>() << ": peak "
              << fmt(b["throughput"].get<double>(), 0) << " tx/s at n = " << b["best_n"].get<double>() << '\n';
  return 0;
}

// tunnel-demo

struct TunnelArgs
{
  Common common;
  std::string mode = "all";
  std::size_t payload = 1 << 20;
  std::size_t trials = 1;
  std::uint64_t seed = 1;
  double loss = 0;
  std::uint32_t segmentSize = tunnel::EndpointOptions{}.segmentSize;
  std::uint32_t window = tunnel::EndpointOptions{}.window;
  std::uint64_t latencyUs = 200;
  std::uint64_t jitterUs = 100;
  bool silentPeer = false;
};

std::string
exchangeTrace(const std::vector<tunnel::ControlExchange>& xs)
{
  std::string s;
  for (const auto& x : xs) {
    if (!s.empty())
      s += ' ';
    s += (x.fromInitiator ? ">" : "<") + tunnel::flagsToString(x.flags);
  }
  return s;
}

int
runTunnel(TunnelArgs& a)
{
  tunnel::ScenarioConfig base;
  base.payloadSize = a.payload;
  base.options.seed = a.seed;
  base.options.lossRate = a.loss;
  base.options.endpoint.segmentSize = a.segmentSize;
  base.options.endpoint.window = a.window;
  base.options.latency = static_cast<sim::SimTime>(a.latencyUs) * 1000;
  base.options.jitter = static_cast<sim::SimTime>(a.jitterUs) * 1000;
  base.options.silentPeer = a.silentPeer;
  std::vector<tunnel::TunnelMode> modes;
  if (a.mode == "all") {
    modes.assign(std::begin(tunnel::ALL_TUNNEL_MODES), std::end(tunnel::ALL_TUNNEL_MODES));
  }
  else {
    base.mode = tunnel::parseTunnelMode(a.mode);
    modes = {base.mode};
  }
  if (!a.common.config.empty()) {
    auto doc = readFile(a.common.config);
    base = tunnel::parseScenarioConfig(doc, base);
    if (json::parse(doc, nullptr, false).contains("mode"))
      modes = {base.mode};
  }
  if (a.trials == 0)
    throw Error(Errc::ConfigInvalid, "trials must be positive");

  auto csv = openReport(a.common.out, "tunnel.csv");
  csv << "mode,trial,seed,bytes,intact,establishment_exchanges,termination_exchanges,interests,retransmissions,"
         "frames_dropped,virtual_seconds\n";
  json summary = json::array();
  bool ok = true;
  for (auto mode : modes) {
    std::size_t intact = 0;
    std::size_t shapeOk = 0;
    json first;
    for (std::size_t t = 0; t < a.trials; ++t) {
      auto options = base.options;
      options.seed = base.options.seed + t;
      auto payload = tunnel::randomPayload(base.payloadSize, options.seed);
      tunnel::TransferReport r;
      try {
        r = tunnel::runScenario(mode, payload, options);
      }
      catch (const Error& e) {
        if (e.code() != Errc::Timeout)
          throw;
        std::cout << tunnel::to_string(mode) << " trial " << t << ": " << e.what() << '\n';
        csv << tunnel::to_string(mode) << ',' << t << ',' << options.seed << ',' << payload.size()
            << ",false,,,,,,\n";
        ok = false;
        continue;
      }
      bool shape = r.establishment.size() == 3 && r.termination.size() == 4;
      intact += r.intact();
      shapeOk += shape;
      csv << tunnel::to_string(mode) << ',' << t << ',' << options.seed << ',' << r.bytesSent << ','
          << (r.intact() ? "true" : "false") << ',' << r.establishment.size() << ',' << r.termination.size() << ','
          << r.interestsTotal << ',' << r.retransmissions << ',' << r.framesDropped << ',' << r.virtualSeconds
          << '\n';
      if (t == 0)
        first = {{"establishment", exchangeTrace(r.establishment)},
                 {"termination", exchangeTrace(r.termination)},
                 {"digest", apov::toHex(r.digest)}};
    }
    ok &= intact == a.trials && shapeOk == a.trials;
    summary.push_back({{"mode", std::string(tunnel::to_string(mode))},
                       {"trials", a.trials},
                       {"intact", intact},
                       {"exchange_counts_ok", shapeOk},
                       {"first_trial", first}});
    std::cout << std::left << std::setw(11) << tunnel::to_string(mode) << ' ' << intact << '/' << a.trials
              << " intact, " << shapeOk << '/' << a.trials << " with 3+4 control exchanges";
    if (!first.is_null())
      std::cout << "  [" << first["establishment"].get<std::string>() << " | "
                << first["termination"].get<std::string>() << ']';
    std::cout << '\n';
  }
  auto js = openReport(a.common.out, "tunnel.json");
  js << json{{"payload_size", base.payloadSize}, {"modes", summary}, {"ok", ok}}.dump(2) << '\n';
  return ok ? 0 : CHECK_FAILED;
}

// registry-demo

struct RegistryArgs
{
  Common common;
  std::size_t identifiers = 1000;
  std::size_t absent = 100;
  std::uint64_t seed = 1;
  std::uint32_t supervisors = 4;
  std::string storeDir;
  std::string requests;
};

int
runRegistry(RegistryArgs& a)
{
  applyConfig(a.common.config, {{"identifiers", into(a.identifiers)},
                                {"absent", into(a.absent)},
                                {"seed", into(a.seed)},
                                {"supervisors", into(a.supervisors)},
                                {"store_dir", into(a.storeDir)},
                                {"requests", into(a.requests)}});
  registry::DemoOptions o;
  o.identifiers = a.identifiers;
  o.absentProbes = a.absent;
  o.seed = a.seed;
  o.domain.supervisors = a.supervisors;
  o.domain.seed = a.seed;
  if (!a.storeDir.empty())
    o.domain.storeDir = a.storeDir;

  if (!a.requests.empty()) {
    // Replay a request file instead of the generated run.
    auto h = registry::threeLevelHierarchy(o.domain);
    std::istringstream lines(readFile(a.requests));
    auto os = openReport(a.common.out, "registry-replies.jsonl");
    std::string line;
    while (std::getline(lines, line)) {
      if (line.empty())
        continue;
      auto reply = registry::handleRequest(h, line);
      std::cout << reply << '\n';
      os << reply << '\n';
    }
    return 0;
  }

  auto r = registry::runRegistryDemo(o);
  auto js = openReport(a.common.out, "registry.json");
  registry::writeDemoJson(js, r);
  auto csv = openReport(a.common.out, "registry.csv");
  csv << "domains,registered,resolutions,resolution_failures,cache_answers,mean_hops,duplicate_attempts,"
         "duplicates_rejected,absent_queries,absent_not_found\n"
      << r.domains << ',' << r.registered << ',' << r.resolutions << ',' << r.resolutionFailures << ','
      << r.cacheAnswers << ',' << r.meanHops << ',' << r.duplicateAttempts << ',' << r.duplicatesRejected << ','
      << r.absentQueries << ',' << r.absentNotFound << '\n';
  std::cout << r.registered << " identifiers over " << r.domains << " domains\n"
            << r.resolutions - r.resolutionFailures << '/' << r.resolutions << " resolutions correct, mean "
            << fmt(r.meanHops, 2) << " hops, " << r.cacheAnswers << " from cache\n"
            << r.duplicatesRejected << '/' << r.duplicateAttempts << " duplicates rejected\n"
            << r.absentNotFound << '/' << r.absentQueries << " unregistered lookups NotFound\n";
  return r.ok() ? 0 : CHECK_FAILED;
}

bool
isInputError(Errc code)
{
  switch (code) {
    case Errc::ConfigInvalid:
    case Errc::InfeasibleSpec:
    case Errc::UnknownNode:
    case Errc::ParseError:
    case Errc::MalformedIp:
    case Errc::InvalidComponent:
    case Errc::UnknownScheme:
    case Errc::EmptyName:
      return true;
    default:
      return false;
  }
}

} // namespace

int
run(int argc, char** argv)
{
  CLI::App app{"Multi-identifier network workbench"};
  app.require_subcommand(1);

  FibBenchArgs fb;
  auto* fibBench = app.add_subcommand("fib-bench", "Binary versus linear FIB lookup on a generated workload");
  addCommon(fibBench, fb.common);
  fibBench->add_option("--entries", fb.entries, "Real entries")->capture_default_str();
  fibBench->add_option("--queries", fb.queries, "Queries per point")->capture_default_str();
  fibBench->add_option("--mode", fb.mode, "hit, miss or mixed")->capture_default_str();
  fibBench->add_option("--len", fb.lengths, "Mean query length N (repeatable)")->delimiter(',')->capture_default_str();
  fibBench->add_option("--M", fb.means, "Mean stored length M (repeatable)")->delimiter(',')->capture_default_str();
  fibBench->add_option("--alphabet", fb.alphabet, "Component pool size")->capture_default_str();
  fibBench->add_option("--spread", fb.spread, "Query length spread around N")->capture_default_str();
  fibBench->add_option("--seed", fb.seed)->capture_default_str();
  fibBench->add_option("--scaling", fb.scaling, "Also time builds of these entry counts")->delimiter(',');

  FibCheckArgs fc;
  auto* fibCheck = app.add_subcommand("fib-check", "Random insert/delete replay against the oracle and invariants");
  addCommon(fibCheck, fc.common);
  fibCheck->add_option("--ops", fc.ops)->capture_default_str();
  fibCheck->add_option("--lookups", fc.lookups)->capture_default_str();
  fibCheck->add_option("--alphabet", fc.alphabet)->capture_default_str();
  fibCheck->add_option("--check-every", fc.checkEvery)->capture_default_str();
  fibCheck->add_option("--seed", fc.seed)->capture_default_str();

  ConsensusArgs cs;
  auto* consensus = app.add_subcommand("consensus-sim", "APoV rounds in virtual time");
  addCommon(consensus, cs.common);
  consensus->add_option("--nodes", cs.nodes)->capture_default_str();
  consensus->add_option("--rounds", cs.rounds)->capture_default_str();
  consensus->add_option("--K", cs.K, "Transactions per block")->capture_default_str();
  consensus->add_option("--band", cs.band, "Bytes per second per direction")->capture_default_str();
  consensus->add_option("--compute", cs.compute, "step-fits, residual-shares or zero")->capture_default_str();
  consensus->add_option("--seed", cs.seed)->capture_default_str();
  consensus->add_option("--fault", cs.faults, "node:behavior[:round], behavior one of crash_at_round, "
                                              "invalid_blocks, dissenting_votes");

  ModelEvalArgs me;
  auto* modelEval = app.add_subcommand("model-eval", "Evaluate the performance model at one point");
  addCommon(modelEval, me.common);
  modelEval->add_option("--n", me.n)->capture_default_str();
  modelEval->add_option("--a", me.a, "Computing power relative to the prototype")->capture_default_str();
  modelEval->add_option("--band", me.band, "Bytes per second")->capture_default_str();
  modelEval->add_option("--K", me.K)->capture_default_str();

  ModelSweepArgs ms;
  auto* modelSweep = app.add_subcommand("model-sweep", "Throughput limit over a grid of n, a and band");
  addCommon(modelSweep, ms.common);
  modelSweep->add_option("--n-min", ms.nMin)->capture_default_str();
  modelSweep->add_option("--n-max", ms.nMax)->capture_default_str();
  modelSweep->add_option("--n-step", ms.nStep)->capture_default_str();
  modelSweep->add_option("--a", ms.as)->delimiter(',')->capture_default_str();
  modelSweep->add_option("--band", ms.bands)->delimiter(',')->capture_default_str();

  TunnelArgs tn;
  auto* tunnelDemo = app.add_subcommand("tunnel-demo", "IP-over-CCN tunnel transfers");
  addCommon(tunnelDemo, tn.common);
  tunnelDemo->add_option("--mode", tn.mode, "all, ip-ccn-ip, ip-ccn, ccn-ip or ccn-ip-ccn")->capture_default_str();
  tunnelDemo->add_option("--payload", tn.payload, "Bytes per transfer")->capture_default_str();
  tunnelDemo->add_option("--trials", tn.trials)->capture_default_str();
  tunnelDemo->add_option("--seed", tn.seed)->capture_default_str();
  tunnelDemo->add_option("--loss", tn.loss, "Data-phase frame loss rate")->capture_default_str();
  tunnelDemo->add_option("--segment-size", tn.segmentSize)->capture_default_str();
  tunnelDemo->add_option("--window", tn.window)->capture_default_str();
  tunnelDemo->add_option("--latency-us", tn.latencyUs)->capture_default_str();
  tunnelDemo->add_option("--jitter-us", tn.jitterUs)->capture_default_str();
  tunnelDemo->add_flag("--silent-peer", tn.silentPeer, "Responder-side MIR drops everything");

  RegistryArgs rg;
  auto* registryDemo = app.add_subcommand("registry-demo", "Registration and resolution over a three-level hierarchy");
  addCommon(registryDemo, rg.common);
  registryDemo->add_option("--identifiers", rg.identifiers)->capture_default_str();
  registryDemo->add_option("--absent", rg.absent, "Unregistered names to look up")->capture_default_str();
  registryDemo->add_option("--seed", rg.seed)->capture_default_str();
  registryDemo->add_option("--supervisors", rg.supervisors)->capture_default_str();
  registryDemo->add_option("--store-dir", rg.storeDir, "Write per-supervisor record files here");
  registryDemo->add_option("--requests", rg.requests, "Replay JSON requests, one per line");

  try {
    app.parse(argc, argv);
  }
  catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  }
  catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  }
  catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n";
    const CLI::App* shown = &app;
    for (const auto* sub : app.get_subcommands())
      shown = sub;
    std::cerr << shown->help();
    return USAGE;
  }

  try {
    if (*fibBench)
      return runFibBench(fb);
    if (*fibCheck)
      return runFibCheckCommand(fc);
    if (*consensus)
      return runConsensus(cs);
    if (*modelEval)
      return runModelEval(me);
    if (*modelSweep)
      return runModelSweep(ms);
    if (*tunnelDemo)
      return runTunnel(tn);
    if (*registryDemo)
      return runRegistry(rg);
  }
  catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return isInputError(e.code()) ? USAGE : CHECK_FAILED;
  }
  catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return CHECK_FAILED;
  }
  return USAGE;
}

} // namespace minet::cli

int
main(int argc, char** argv)
{
  return minet::cli::run(argc, argv);
}
