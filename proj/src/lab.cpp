#include "symflow/lab.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "json_io.hpp"
#include "symflow/capacity.hpp"
#include "symflow/ergodic.hpp"
#include "symflow/error.hpp"
#include "symflow/generator.hpp"
#include "symflow/markers.hpp"
#include "symflow/periodic.hpp"
#include "symflow/recode.hpp"
#include "symflow/section.hpp"

namespace symflow {

using io::Json;

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

class Csv {
 public:
  Csv(const std::string& hash, std::uint64_t seed, const std::string& columns) {
    out_ << "# config-hash=" << hash << " seed=" << seed << "\n" << columns << "\n";
  }
  template <typename... T>
  void row(const T&... cells) {
    bool first = true;
    ((out_ << (first ? "" : ",") << cells, first = false), ...);
    out_ << "\n";
  }
  std::string str() const { return out_.str(); }

 private:
  std::ostringstream out_;
};

struct Context {
  Json config;
  Json params;
  std::uint64_t seed = 0;
  std::string hash;
  std::string baseDir;
  std::vector<LabFile> files;

  Csv csv(const std::string& columns) const { return Csv(hash, seed, columns); }
  void emit(const std::string& name, const Csv& c) { files.push_back({name, c.str()}); }
  void emitJson(const std::string& name, const Json& j) { files.push_back({name, j.dump(2) + "\n"}); }

  Json spec(const char* key) const {
    if (!config.contains(key)) fail(ErrorCode::Parse, std::string("config needs '") + key + "'");
    const Json& j = config.at(key);
    if (!j.is_string()) return j;
    std::filesystem::path p(j.get<std::string>());
    if (p.is_relative()) p = std::filesystem::path(baseDir) / p;
    std::ifstream in(p);
    if (!in) fail(ErrorCode::Io, "cannot read '" + p.string() + "'");
    try {
      return Json::parse(in);
    } catch (const Json::exception& e) {
      fail(ErrorCode::Parse, p.string() + ": " + e.what());
    }
  }

  template <typename T>
  T get(const char* key, T fallback) const {
    return params.contains(key) ? params.at(key).get<T>() : fallback;
  }
  const Json& need(const char* key) const {
    if (!params.contains(key)) fail(ErrorCode::Parse, std::string("params needs '") + key + "'");
    return params.at(key);
  }
  QuadraticReal quadratic(const char* key) const { return io::quadraticFrom(need(key)); }
  Rational rational(const char* key) const { return io::rationalFrom(need(key)); }
};

RecodeOptions recodeOptions(const Context& c) {
  RecodeOptions o;
  o.separation = c.get<std::size_t>("separation", o.separation);
  o.maxSeparation = c.get<std::size_t>("maxSeparation", o.maxSeparation);
  o.maxWordLen = c.get<std::size_t>("maxWordLen", o.maxWordLen);
  o.zWindow = c.get<std::size_t>("zWindow", o.zWindow);
  o.K = c.get<std::size_t>("K", o.K);
  return o;
}

// a flow point from a seed; needs a Sturmian base
FlowPoint seededPoint(const SuspensionFlow& f, std::uint64_t seed) {
  auto coder = f.base().sturmianCoder();
  if (!coder) fail(ErrorCode::InvalidArgument, "seeded flow points need a sturmian base");
  std::mt19937_64 gen(seed);
  QuadraticReal phase(ratio(static_cast<long>(gen() % 1000003), 1000003));
  PointOracle x = PointOracle::sturmian(*coder, phase);
  QuadraticReal h = f.roof().at(x) * QuadraticReal(ratio(static_cast<long>(gen() % 997), 997));
  return FlowPoint{x, h};
}

Json recodeJson(const RecodedFlow& r) {
  Json j;
  j["kind"] = r.kind() == RecodeKind::Dex ? "dex" : (r.kind() == RecodeKind::Dep ? "dep" : "bog");
  j["p"] = io::quadraticTo(r.p());
  j["q"] = io::quadraticTo(r.q());
  j["delta"] = io::quadraticTo(r.delta());
  j["M"] = r.M();
  j["K"] = r.K();
  j["separation"] = r.separationUsed();
  j["marker"] = to_string(r.marker().word);
  j["zWindow"] = r.zWindow();
  Json atoms = Json::array();
  for (const RecodeAtom& a : r.atoms()) {
    Json x;
    x["window"] = to_string(a.window);
    x["gap"] = a.gap;
    x["returnTime"] = io::quadraticTo(a.returnTime);
    x["k"] = a.k;
    x["l"] = a.l;
    x["remainder"] = io::quadraticTo(a.remainder);
    x["schedule"] = to_string(a.schedule);
    x["zBlock"] = to_string(a.zBlock);
    atoms.push_back(std::move(x));
  }
  j["atoms"] = std::move(atoms);
  return j;
}

void returnCensus(Context& c, const RecodedFlow& r) {
  const auto returns = c.get<std::size_t>("returns", 10000);
  FlowPoint y = seededPoint(r.source(), c.seed);
  ReturnWalker walker(r.source(), r.section(), y, 10 * returns + 1000);
  walker.next();  // the first hit starts from an arbitrary height
  QuadraticReal last = walker.elapsed();
  std::map<std::string, std::size_t> counts;
  std::map<std::string, std::pair<QuadraticReal, QuadraticReal>> range;
  for (std::size_t i = 0; i < returns; ++i) {
    walker.next();
    QuadraticReal t = walker.elapsed() - last;
    last = walker.elapsed();
    std::string cls = r.stepClass(t);
    ++counts[cls];
    auto it = range.find(cls);
    if (it == range.end()) {
      range.emplace(cls, std::make_pair(t, t));
    } else {
      if (t < it->second.first) it->second.first = t;
      if (t > it->second.second) it->second.second = t;
    }
  }
  Csv csv = c.csv("class,count,min,max");
  for (const auto& [cls, n] : counts) csv.row(cls, n, to_string(range.at(cls).first), to_string(range.at(cls).second));
  c.emit("return_census.csv", csv);
  c.emitJson("recoded.json", recodeJson(r));
}

void runEntropy(Context& c) {
  Subshift s = io::subshiftFrom(c.spec("system"));
  const auto horizon = c.get<std::size_t>("horizon", 20);
  Csv csv = c.csv("quantity,n,value");
  EntropyValue e = s.topologicalEntropy(horizon);
  csv.row(e.exact ? "perron" : "block-horizon", e.exact ? std::string() : std::to_string(e.horizon), num(e.value));
  for (std::size_t n = 1; n <= horizon; ++n)
    csv.row("block", n, num(std::log(s.languageSize(n).get_d()) / static_cast<double>(n)));
  c.emit("entropy.csv", csv);
  if (c.config.contains("measure")) {
    auto mu = io::measureFrom(c.spec("measure"));
    Csv table = c.csv("n,H_n,H_n/n,H_n-H_n-1");
    for (const BlockEntropyRow& r : blockEntropyTable(*mu, horizon))
      table.row(r.n, num(r.h), num(r.perSymbol), num(r.increment));
    c.emit("block_entropy.csv", table);
  }
}

void runMarker(Context& c) {
  Subshift s = io::subshiftFrom(c.spec("system"));
  const auto n = c.need("n").get<std::size_t>();
  const auto depth = c.get<std::size_t>("depth", 100);
  MarkerSet m = buildMarker(s, n, c.get<std::size_t>("maxWordLen", 64), depth);
  MarkerCertificate cert = certifyMarker(s, m, depth);
  Csv csv = c.csv("word,n,minReturn,maxGap,disjoint,coverage,coverageK,scanDepth");
  csv.row(to_string(m.word), m.n, m.minReturn, m.maxGap, cert.disjoint, cert.coverage, cert.coverageK, cert.scanDepth);
  c.emit("marker.csv", csv);
  c.emitJson("marker.json", Json{{"word", to_string(m.word)},
                                 {"n", m.n},
                                 {"minReturn", m.minReturn},
                                 {"maxGap", m.maxGap},
                                 {"certificate",
                                  {{"disjoint", cert.disjoint},
                                   {"coverage", cert.coverage},
                                   {"coverageK", cert.coverageK},
                                   {"scanDepth", cert.scanDepth}}}});
}

void runRecodeDex(Context& c) {
  SuspensionFlow f = io::flowFrom(c.spec("system"));
  RecodedFlow r = recodeDex(f, c.quadratic("p"), c.quadratic("q"), c.rational("eps"), c.quadratic("delta"),
                            recodeOptions(c));
  returnCensus(c, r);
}

void runRecodeDep(Context& c) {
  SuspensionFlow f = io::flowFrom(c.spec("system"));
  RecodedFlow r = recodeDep(f, c.quadratic("p"), c.quadratic("q"), c.need("M").get<std::size_t>(), c.quadratic("delta"),
                            recodeOptions(c));
  returnCensus(c, r);
}

void runGeneratorRoundTrip(Context& c) {
  SuspensionFlow f = io::flowFrom(c.spec("system"));
  RecodeOptions opt = recodeOptions(c);
  if (!c.params.contains("zWindow")) opt.zWindow = 400;
  GeneratorModel g = GeneratorModel::build(f, c.quadratic("p"), c.quadratic("q"), c.need("M").get<std::size_t>(),
                                           c.quadratic("delta"), opt);
  const auto n = c.get<std::size_t>("n", 50);
  const auto points = c.get<std::size_t>("points", 100);
  std::mt19937_64 gen(c.seed);
  Csv csv = c.csv("seed,n,match,recoveredLen");
  for (std::size_t i = 0; i < points; ++i) {
    std::uint64_t s = gen();
    FlowPoint z = g.dep().encode(seededPoint(f, s));
    RoundTrip rt = roundTrip(g, z, n);
    csv.row(s, n, rt.match ? 1 : 0, rt.recovered.size());
  }
  c.emit("generator_roundtrip.csv", csv);
}

void runOcap(Context& c) {
  Subshift s = io::subshiftFrom(c.spec("system"));
  const auto horizon = c.get<std::size_t>("horizon", 64);
  const auto maxPeriod = c.get<std::size_t>("maxPeriod", 12);
  Csv csv = c.csv("set,upper,lower,witness,horizon,method");
  for (const Json& set : c.need("sets")) {
    std::vector<Cylinder> e;
    std::string label;
    for (const Json& w : set) {
      e.push_back(Cylinder{0, io::wordFrom(w)});
      label += (label.empty() ? "" : "|") + w.get<std::string>();
    }
    OcapResult o = orbitCapacity(s, e, horizon, maxPeriod);
    csv.row(label, num(o.upperEstimate), num(o.lowerWitness), o.witness ? to_string(*o.witness) : std::string(),
            o.horizon, o.method);
  }
  c.emit("ocap.csv", csv);
}

std::vector<std::size_t> partitionOr(const Context& c, std::size_t alphabet) {
  if (c.params.contains("partition")) return c.params.at("partition").get<std::vector<std::size_t>>();
  std::vector<std::size_t> p(alphabet);
  for (std::size_t i = 0; i < alphabet; ++i) p[i] = i;
  return p;
}

void runAbramov(Context& c) {
  auto mu = io::measureFrom(c.spec("measure"));
  Roof roof = io::roofFrom(c.spec("roof"), mu->alphabetSize());
  const Rational delta = c.params.contains("delta") ? c.rational("delta") : Rational(1);
  const auto n = c.get<std::size_t>("n", 14);
  auto partition = partitionOr(c, mu->alphabetSize());
  TowerEntropy t = timeDeltaTowerEntropy(*mu, roof, delta, partition, n);
  const double h = entropyRate(*mu);
  const double hp = partitionEntropyRate(*mu, partition, n);
  const double lower = hp / t.roofIntegral;
  const double upper = (hp + std::log(3.0)) / t.roofIntegral;
  Csv csv = c.csv("quantity,value");
  csv.row("roofIntegral", num(t.roofIntegral));
  csv.row("abramov", num(abramovEntropy(h, t.roofIntegral)));
  csv.row("towerPerUnitTime", num(t.perUnitTime));
  csv.row("towerBlockRate", num(t.blockRate / delta.get_d()));
  csv.row("partitionEntropy", num(hp));
  csv.row("lower", num(lower));
  csv.row("upper", num(upper));
  csv.row("margin", num(std::min(t.perUnitTime - lower, upper - t.perUnitTime)));
  csv.row("n", t.n);
  c.emit("abramov.csv", csv);
}

std::vector<Symbol> symbolSet(const Context& c) {
  std::vector<Symbol> a;
  for (const Json& s : c.need("set")) a.push_back(s.get<Symbol>());
  return a;
}

void runKac(Context& c) {
  auto mu = io::measureFrom(c.spec("measure"));
  KacResult k = kacCheck(*mu, symbolSet(c), c.get<std::size_t>("returns", 100000), c.seed);
  Csv csv = c.csv("quantity,value");
  csv.row("simulatedMean", num(k.simulatedMean));
  csv.row("exactMean", num(k.exactMean));
  csv.row("inverseMeasure", num(1.0 / k.measureOfA));
  csv.row("returns", k.returns);
  csv.row("tailMass", num(k.tailMass));
  csv.row("truncation", k.truncation);
  c.emit("kac.csv", csv);
}

void runInduced(Context& c) {
  auto mu = io::measureFrom(c.spec("measure"));
  std::vector<Symbol> a = symbolSet(c);
  std::vector<std::size_t> part = c.params.contains("partition")
                                      ? c.params.at("partition").get<std::vector<std::size_t>>()
                                      : std::vector<std::size_t>(a.size());
  if (!c.params.contains("partition"))
    for (std::size_t i = 0; i < a.size(); ++i) part[i] = i;
  std::vector<std::size_t> ns = c.get<std::vector<std::size_t>>("n", {10, 12, 14});
  Csv csv = c.csv("n,lhs,rhs,gap,tailMass");
  for (std::size_t n : ns) {
    InducedCheck r = inducedEntropyIdentityCheck(*mu, a, part, n);
    csv.row(n, num(r.lhs), num(r.rhs), num(r.gap), num(r.tailMass));
  }
  c.emit("induced.csv", csv);
}

void runPeriodic(Context& c) {
  Json sys = c.spec("system");
  DMetricConfig d;
  d.terms = c.get<std::size_t>("terms", d.terms);
  const auto maxPeriod = c.get<std::size_t>("maxPeriod", 12);
  PeriodicCensus census =
      io::isFlowSpec(sys) ? periodicCensus(io::flowFrom(sys), maxPeriod, d) : periodicCensus(io::subshiftFrom(sys), maxPeriod, d);
  std::vector<double> eps = c.get<std::vector<double>>("eps", {0.5, 0.25, 0.125, 0.0625});
  const std::string mode = c.get<std::string>("count", "orbits");
  if (mode != "orbits" && mode != "measures") fail(ErrorCode::Parse, "count is \"orbits\" or \"measures\"");
  U1Table table = u1Estimate(census, eps, mode == "orbits" ? PkCount::Orbits : PkCount::Measures);
  std::string cols = "period,orbit,word";
  for (std::size_t k = 1; k <= eps.size(); ++k) cols += ",p_" + std::to_string(k);
  for (std::size_t k = 1; k <= eps.size(); ++k) cols += ",envelope_" + std::to_string(k);
  Csv csv = c.csv(cols);
  for (const U1Row& row : table.rows) {
    std::ostringstream line;
    const PeriodicOrbit& o = census.orbits[row.orbit];
    line << to_string(o.period) << "," << row.orbit << "," << to_string(o.word);
    for (double v : row.pk) line << "," << num(v);
    for (double v : row.envelope) line << "," << num(v);
    csv.row(line.str());
  }
  c.emit("periodic_census.csv", csv);
  PeriodicGrowth g = globalPeriodicGrowth(census);
  Csv growth = c.csv("quantity,n,value");
  growth.row("growth", census.maxPeriod, num(g.value));
  growth.row("cumulativeSup", census.maxPeriod, num(g.cumulativeSup));
  growth.row("horizonLimited", census.maxPeriod, g.horizonLimited ? 1 : 0);
  for (std::size_t n = 1; n <= census.maxPeriod; ++n) growth.row("fix", n, census.fixedCounts[n].get_str());
  c.emit("periodic_growth.csv", growth);
}

const std::map<std::string, std::function<void(Context&)>>& registry() {
  static const std::map<std::string, std::function<void(Context&)>> r{
      {"entropy", runEntropy},
      {"marker", runMarker},
      {"recode-dex", runRecodeDex},
      {"recode-dep", runRecodeDep},
      {"generator-roundtrip", runGeneratorRoundTrip},
      {"ocap", runOcap},
      {"abramov-check", runAbramov},
      {"kac-check", runKac},
      {"induced-check", runInduced},
      {"periodic", runPeriodic},
  };
  return r;
}

int exitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::Parse:
    case ErrorCode::InvalidArgument:
    case ErrorCode::Io:
      return 2;
    case ErrorCode::PreconditionFailed:
    case ErrorCode::InfeasibleSchedule:
    case ErrorCode::MarkerUnavailable:
    case ErrorCode::NoMarkerFound:
      return 3;
    default:
      return 1;
  }
}

}  // namespace

const std::vector<std::string>& labExperiments() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [k, _] : registry()) v.push_back(k);
    return v;
  }();
  return names;
}

LabOutcome runLab(const std::string& configJson, std::uint64_t seed, const std::string& baseDir) {
  LabOutcome out;
  auto failWith = [&](int code, const std::string& error, const std::string& message, Json extra = Json::object()) {
    out.exitCode = code;
    out.files.clear();
    Json e{{"error", error}, {"message", message}};
    if (!out.experiment.empty()) e["experiment"] = out.experiment;
    for (auto& [k, v] : extra.items()) e[k] = v;
    out.errorJson = e.dump();
  };
  Context c;
  try {
    c.config = Json::parse(configJson);
  } catch (const Json::exception& e) {
    failWith(2, errorCodeName(ErrorCode::Parse), e.what());
    return out;
  }
  const std::string canonical = c.config.dump();
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx",
                static_cast<unsigned long long>(fnv1a64(canonical + "\nseed=" + std::to_string(seed))));
  out.configHash = hex;
  c.seed = seed;
  c.hash = hex;
  c.baseDir = baseDir;
  try {
    if (!c.config.is_object() || !c.config.contains("experiment"))
      fail(ErrorCode::Parse, "config needs an 'experiment' name");
    out.experiment = c.config.at("experiment").get<std::string>();
    if (c.config.contains("out")) out.outDir = c.config.at("out").get<std::string>();
    c.params = c.config.value("params", Json::object());
    auto it = registry().find(out.experiment);
    if (it == registry().end()) fail(ErrorCode::InvalidArgument, "unknown experiment '" + out.experiment + "'");
    it->second(c);
    out.files = std::move(c.files);
  } catch (const NoMarkerError& e) {
    failWith(exitCodeFor(e.code()), errorCodeName(e.code()), e.what(), e.witness() ? Json{{"witness", to_string(*e.witness())}} : Json::object());
  } catch (const Error& e) {
    failWith(exitCodeFor(e.code()), errorCodeName(e.code()), e.what());
  } catch (const Json::exception& e) {
    failWith(2, errorCodeName(ErrorCode::Parse), e.what());
  } catch (const std::exception& e) {
    failWith(1, "Internal", e.what());
  }
  return out;
}

void writeLabOutcome(const LabOutcome& outcome, const std::string& dir) {
  std::filesystem::create_directories(dir);
  auto write = [&](const std::string& name, const std::string& text) {
    std::ofstream f(std::filesystem::path(dir) / name, std::ios::binary);
    if (!f) fail(ErrorCode::Io, "cannot write '" + name + "' in '" + dir + "'");
    f << text;
  };
  if (outcome.exitCode != 0) {
    write("error.json", outcome.errorJson + "\n");
    return;
  }
  for (const LabFile& file : outcome.files) write(file.name, file.contents);
}

}  // namespace symflow
