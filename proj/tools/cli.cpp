#include "cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "hmo/errors.hpp"

namespace hmo::cli {
namespace {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

std::string join_problems(const std::vector<std::string>& p) {
  std::string s = "schema violations:";
  for (const std::string& line : p) s += "\n  " + line;
  return s;
}

// Collects every schema problem instead of stopping at the first one.
class Reader {
 public:
  std::vector<std::string> problems;

  void fail(const std::string& ptr, const std::string& what) { problems.push_back((ptr.empty() ? "/" : ptr) + ": " + what); }

  const json* field(const json& obj, const char* key, const std::string& ptr, bool required = true) {
    if (!obj.is_object()) {
      fail(ptr, "expected an object");
      return nullptr;
    }
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) {
      if (required) fail(ptr + "/" + key, "missing");
      return nullptr;
    }
    return &*it;
  }

  std::int64_t integer(const json& v, const std::string& ptr) {
    if (v.is_number_integer()) {
      if (v.is_number_unsigned() && v.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX)) {
        fail(ptr, "integer out of range");
        return 0;
      }
      return v.get<std::int64_t>();
    }
    if (v.is_string()) {
      const std::string s = v.get<std::string>();
      std::size_t used = 0;
      try {
        const long long x = std::stoll(s, &used);
        if (used == s.size()) return x;
      } catch (const std::exception&) {
      }
      fail(ptr, "expected a decimal integer, got \"" + s + "\"");
      return 0;
    }
    fail(ptr, "expected an integer");
    return 0;
  }

  std::int64_t integer(const json& obj, const char* key, const std::string& ptr, std::int64_t fallback) {
    const json* v = field(obj, key, ptr, false);
    return v ? integer(*v, ptr + "/" + key) : fallback;
  }

  std::int64_t required_integer(const json& obj, const char* key, const std::string& ptr) {
    const json* v = field(obj, key, ptr);
    return v ? integer(*v, ptr + "/" + key) : 0;
  }

  std::optional<std::int64_t> optional_integer(const json& obj, const char* key, const std::string& ptr) {
    const json* v = field(obj, key, ptr, false);
    if (!v) return std::nullopt;
    return integer(*v, ptr + "/" + key);
  }

  Rational rational(const json& v, const std::string& ptr) {
    if (v.is_number_integer()) return Rational(static_cast<long long>(integer(v, ptr)));
    if (v.is_string()) {
      try {
        return Rational::parse(v.get<std::string>());
      } catch (const std::exception&) {
        fail(ptr, "expected a rational \"p/q\", got \"" + v.get<std::string>() + "\"");
        return Rational(0);
      }
    }
    if (v.is_object()) {
      const std::int64_t num = required_integer(v, "num", ptr);
      const std::int64_t den = required_integer(v, "den", ptr);
      if (den == 0) {
        fail(ptr + "/den", "zero denominator");
        return Rational(0);
      }
      return Rational(static_cast<long long>(num), static_cast<long long>(den));
    }
    fail(ptr, "expected a rational");
    return Rational(0);
  }

  const json* array(const json& obj, const char* key, const std::string& ptr, bool required = true) {
    const json* v = field(obj, key, ptr, required);
    if (v && !v->is_array()) {
      fail(ptr + "/" + key, "expected an array");
      return nullptr;
    }
    return v;
  }

  std::vector<std::int64_t> integers(const json& obj, const char* key, const std::string& ptr) {
    std::vector<std::int64_t> out;
    const json* a = array(obj, key, ptr);
    if (!a) return out;
    for (std::size_t i = 0; i < a->size(); ++i) out.push_back(integer((*a)[i], ptr + "/" + key + "/" + std::to_string(i)));
    return out;
  }

  std::vector<std::vector<std::int64_t>> matrix(const json& obj, const char* key, const std::string& ptr) {
    std::vector<std::vector<std::int64_t>> out;
    const json* a = array(obj, key, ptr);
    if (!a) return out;
    for (std::size_t i = 0; i < a->size(); ++i) {
      const std::string p = ptr + "/" + key + "/" + std::to_string(i);
      if (!(*a)[i].is_array()) {
        fail(p, "expected an array");
        out.emplace_back();
        continue;
      }
      std::vector<std::int64_t> row;
      for (std::size_t j = 0; j < (*a)[i].size(); ++j) row.push_back(integer((*a)[i][j], p + "/" + std::to_string(j)));
      out.push_back(row);
    }
    return out;
  }

  void finish() {
    if (!problems.empty()) throw SchemaError(problems);
  }
};

std::string ptr_at(const std::string& base, const char* key, std::size_t i) {
  return base + "/" + key + "/" + std::to_string(i);
}

MimoInstance parse_mimo(Reader& rd, const json& doc) {
  MimoInstance m;
  m.d = static_cast<std::size_t>(std::max<std::int64_t>(0, rd.required_integer(doc, "d", "")));
  m.target = rd.integers(doc, "target", "");
  const json* types = rd.array(doc, "types", "");
  if (!types) return m;
  for (std::size_t i = 0; i < types->size(); ++i) {
    const json& t = (*types)[i];
    const std::string p = ptr_at("", "types", i);
    MimoType tp;
    tp.multiplicity = rd.required_integer(t, "multiplicity", p);
    tp.aux = static_cast<std::size_t>(std::max<std::int64_t>(0, rd.integer(t, "aux", p, 0)));
    const auto rows = rd.matrix(t, "a", p);
    std::vector<std::vector<long long>> ll;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != m.d + tp.aux) rd.fail(ptr_at(p, "a", r), "row length must be d + aux");
      ll.emplace_back(rows[r].begin(), rows[r].end());
      ll.back().resize(m.d + tp.aux, 0);
    }
    tp.a = IntegerMatrix::from_rows(ll, m.d + tp.aux);
    tp.b = rd.integers(t, "b", p);
    if (tp.b.size() != rows.size()) rd.fail(p + "/b", "needs one entry per row of a");
    if (const json* obj = rd.array(t, "objective", p, false)) {
      for (std::size_t k = 0; k < obj->size(); ++k) {
        const json& o = (*obj)[k];
        const std::string q = ptr_at(p, "objective", k);
        MimoObjectiveTerm term;
        term.coordinates = {static_cast<std::size_t>(std::max<std::int64_t>(0, rd.required_integer(o, "coordinate", q)))};
        if (const json* lin = rd.field(o, "linear", q, false)) term.linear = rd.rational(*lin, q + "/linear");
        if (const json* tab = rd.array(o, "table", q, false)) {
          RationalVector values;
          for (std::size_t v = 0; v < tab->size(); ++v) values.push_back(rd.rational((*tab)[v], ptr_at(q, "table", v)));
          term.table = values;
          term.table_lower = rd.integer(o, "table_lower", q, 0);
        }
        if (!term.linear && !term.table) rd.fail(q, "needs linear or table");
        tp.objective.push_back(term);
      }
    }
    m.types.push_back(std::move(tp));
  }
  return m;
}

SchedulingInstance parse_scheduling(Reader& rd, const json& doc) {
  SchedulingInstance inst;
  if (const json* kinds = rd.array(doc, "machine_kinds", "")) {
    for (std::size_t i = 0; i < kinds->size(); ++i) {
      const std::string p = ptr_at("", "machine_kinds", i);
      MachineKind k;
      if (const json* speeds = rd.array((*kinds)[i], "speeds", p)) {
        for (std::size_t q = 0; q < speeds->size(); ++q) {
          const std::string sp = ptr_at(p, "speeds", q);
          SpeedClass s;
          const json* speed = rd.field((*speeds)[q], "speed", sp, false);
          s.speed = speed ? rd.rational(*speed, sp + "/speed") : Rational(1);
          s.count = rd.required_integer((*speeds)[q], "count", sp);
          if (s.speed.sign() <= 0 || s.speed > Rational(1)) rd.fail(sp + "/speed", "speed must lie in (0, 1]");
          if (s.count < 0) rd.fail(sp + "/count", "must be nonnegative");
          k.speeds.push_back(s);
        }
      }
      inst.kinds.push_back(k);
    }
  }
  if (const json* jobs = rd.array(doc, "jobs", "")) {
    for (std::size_t j = 0; j < jobs->size(); ++j) {
      const json& jt = (*jobs)[j];
      const std::string p = ptr_at("", "jobs", j);
      JobType job;
      job.count = rd.required_integer(jt, "count", p);
      job.weight = rd.integer(jt, "weight", p, 1);
      if (job.count < 0) rd.fail(p + "/count", "must be nonnegative");
      if (job.weight < 0) rd.fail(p + "/weight", "must be nonnegative");
      if (const json* per = rd.array(jt, "per_kind", p)) {
        if (per->size() != inst.kinds.size()) rd.fail(p + "/per_kind", "needs one entry per machine kind");
        for (std::size_t i = 0; i < per->size(); ++i) {
          const std::string q = ptr_at(p, "per_kind", i);
          JobOnKind on;
          on.size = rd.optional_integer((*per)[i], "size", q);
          on.release = rd.integer((*per)[i], "release", q, 0);
          on.due = rd.optional_integer((*per)[i], "due", q);
          job.per_kind.push_back(on);
        }
      }
      inst.jobs.push_back(job);
    }
  }
  return inst;
}

KnapsackInstance parse_knapsack(Reader& rd, const json& doc) {
  KnapsackInstance k;
  k.dims = static_cast<std::size_t>(std::max<std::int64_t>(1, rd.integer(doc, "dims", "", 1)));
  if (const json* items = rd.array(doc, "items", "")) {
    for (std::size_t j = 0; j < items->size(); ++j) {
      const std::string p = ptr_at("", "items", j);
      k.items.push_back({rd.integers((*items)[j], "size", p), rd.required_integer((*items)[j], "count", p)});
    }
  }
  if (const json* bins = rd.array(doc, "knapsacks", "")) {
    for (std::size_t i = 0; i < bins->size(); ++i) {
      const std::string p = ptr_at("", "knapsacks", i);
      k.knapsacks.push_back({rd.integers((*bins)[i], "capacity", p), rd.required_integer((*bins)[i], "count", p)});
    }
  }
  return k;
}

void parse_items(Reader& rd, const json& doc, std::vector<std::int64_t>& sizes, std::vector<std::int64_t>& counts) {
  if (const json* items = rd.array(doc, "items", "")) {
    for (std::size_t j = 0; j < items->size(); ++j) {
      const std::string p = ptr_at("", "items", j);
      sizes.push_back(rd.required_integer((*items)[j], "size", p));
      counts.push_back(rd.required_integer((*items)[j], "count", p));
    }
  }
}

SurfingInstance parse_surfing(Reader& rd, const json& doc) {
  SurfingInstance s;
  s.commodities = static_cast<std::size_t>(std::max<std::int64_t>(0, rd.required_integer(doc, "commodities", "")));
  s.servers = static_cast<std::size_t>(std::max<std::int64_t>(0, rd.required_integer(doc, "servers", "")));
  s.supply = rd.matrix(doc, "supply", "");
  if (const json* surfers = rd.array(doc, "surfers", "")) {
    for (std::size_t i = 0; i < surfers->size(); ++i) {
      const json& st = (*surfers)[i];
      const std::string p = ptr_at("", "surfers", i);
      s.surfers.push_back({rd.required_integer(st, "count", p), rd.integers(st, "demand", p), rd.integers(st, "capacity", p),
                           rd.matrix(st, "cost", p)});
    }
  }
  return s;
}

ojson integers_json(const std::vector<std::int64_t>& v) {
  ojson a = ojson::array();
  for (std::int64_t x : v) a.push_back(x);
  return a;
}

ojson items_json(const std::vector<std::int64_t>& sizes, const std::vector<std::int64_t>& counts) {
  ojson a = ojson::array();
  for (std::size_t j = 0; j < sizes.size(); ++j) a.push_back({{"size", sizes[j]}, {"count", counts[j]}});
  return a;
}

ojson bins_json(const std::vector<PackedBin>& bins) {
  ojson a = ojson::array();
  for (const PackedBin& b : bins) a.push_back({{"type", b.type}, {"count", b.count}, {"items", integers_json(b.items)}});
  return a;
}

ojson mimo_solution_json(const MimoSolution& sol) {
  ojson per = ojson::array();
  for (const auto& elems : sol.per_type) {
    ojson list = ojson::array();
    for (const MimoElement& e : elems) {
      list.push_back({{"x", integers_json(e.x)}, {"aux", integers_json(e.aux)}, {"count", e.count.get_str()}});
    }
    per.push_back(list);
  }
  return {{"per_type", per}};
}

MimoSolution mimo_solution_from_json(Reader& rd, const json& doc) {
  MimoSolution sol;
  sol.status = NfoldStatus::kOptimal;
  if (const json* per = rd.array(doc, "per_type", "")) {
    for (std::size_t i = 0; i < per->size(); ++i) {
      std::vector<MimoElement> elems;
      const std::string p = "/per_type/" + std::to_string(i);
      if (!(*per)[i].is_array()) {
        rd.fail(p, "expected an array");
        continue;
      }
      for (std::size_t k = 0; k < (*per)[i].size(); ++k) {
        const json& e = (*per)[i][k];
        const std::string q = p + "/" + std::to_string(k);
        MimoElement el;
        el.x = rd.integers(e, "x", q);
        if (rd.field(e, "aux", q, false)) el.aux = rd.integers(e, "aux", q);
        el.count = mpz_class(rd.required_integer(e, "count", q));
        elems.push_back(std::move(el));
      }
      sol.per_type.push_back(std::move(elems));
    }
  }
  return sol;
}

ojson nfold_stats_json(const NfoldStats& s) {
  return {{"mode", to_string(s.mode_used)},
          {"configurations", s.configurations},
          {"columns", s.columns},
          {"nodes", s.nodes},
          {"lp_solves", s.lp_solves}};
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError({"/: " + path + " is not valid JSON (" + std::string(e.what()) + ")"});
  }
}

struct Flags {
  std::string objective;
  std::string strategy = "auto";
  std::size_t conf_cap = 200000;
  bool timing = false;
  std::optional<std::int64_t> probe;
};

NfoldOptions options_of(const Flags& f) {
  NfoldOptions o;
  o.mode = f.strategy == "direct" ? SolveMode::kDirect : f.strategy == "huge" ? SolveMode::kHuge : SolveMode::kAuto;
  o.conf_cap = f.conf_cap;
  return o;
}

void print(std::ostream& out, const ojson& j) { out << j.dump(2) << "\n"; }

int solve_command(const std::string& path, const Flags& flags, std::ostream& out) {
  const auto t0 = std::chrono::steady_clock::now();
  const Instance inst = parse_instance(read_json_file(path));
  const NfoldOptions opt = options_of(flags);
  ojson rep;
  bool feasible = false;
  if (const auto* m = std::get_if<MimoInstance>(&inst)) {
    const MimoSolution sol = solve_mimo(*m, opt);
    feasible = sol.status == NfoldStatus::kOptimal;
    rep["status"] = feasible ? "optimal" : "infeasible";
    if (feasible) {
      rep["value"] = sol.objective.str();
      rep["solution"] = mimo_solution_json(sol);
    }
    rep["stats"] = nfold_stats_json(sol.stats);
  } else if (const auto* s = std::get_if<SchedulingInstance>(&inst)) {
    const ObjectiveSpec obj = ObjectiveSpec::parse(flags.objective.empty() ? "cmax" : flags.objective);
    const SchedulingResult res = solve_scheduling(*s, obj, opt);
    feasible = res.status == ScheduleStatus::kOptimal;
    rep["status"] = feasible ? "optimal" : "infeasible";
    rep["objective"] = obj.str();
    if (feasible) {
      rep["value"] = res.value.str();
      rep["solution"] = schedule_to_json(res.schedule);
    }
    rep["stats"] = {{"probes", res.stats.probes},
                    {"configurations", res.stats.configurations},
                    {"nodes", res.stats.nodes},
                    {"lp_solves", res.stats.lp_solves},
                    {"objective_scale", res.stats.objective_scale}};
  } else if (const auto* k = std::get_if<KnapsackInstance>(&inst)) {
    const auto packing = solve_knapsack(*k, opt);
    feasible = packing.has_value();
    rep["status"] = feasible ? "feasible" : "infeasible";
    if (feasible) rep["solution"] = {{"bins", bins_json(*packing)}};
  } else if (const auto* b = std::get_if<BinPackingInput>(&inst)) {
    const BinPackingResult r = binpacking_min_bins(b->sizes, b->counts, b->capacity, b->limit, opt);
    feasible = true;
    rep["status"] = "optimal";
    rep["value"] = Rational(static_cast<long long>(r.bins)).str();
    rep["solution"] = {{"bins", bins_json(r.packing)}};
    rep["stats"] = {{"probes", r.probes}};
  } else if (const auto* c = std::get_if<CuttingStockInput>(&inst)) {
    const CuttingStockResult r = solve_cutting_stock(c->sizes, c->counts, c->rolls, opt);
    feasible = r.status == NfoldStatus::kOptimal;
    rep["status"] = feasible ? "optimal" : "infeasible";
    if (feasible) {
      rep["value"] = r.cost.str();
      rep["solution"] = {{"rolls_used", integers_json(r.rolls_used)}, {"patterns", bins_json(r.patterns)}};
    }
    rep["stats"] = {{"guesses", r.guesses}};
  } else if (const auto* sf = std::get_if<SurfingInstance>(&inst)) {
    const SurfingResult r = solve_surfing(*sf, opt);
    feasible = r.status == NfoldStatus::kOptimal;
    rep["status"] = feasible ? "optimal" : "infeasible";
    if (r.demand_exceeds_supply) rep["reason"] = "total demand exceeds total supply";
    if (feasible) {
      rep["value"] = r.cost.str();
      ojson list = ojson::array();
      for (const SurferAssignment& a : r.assignments) {
        ojson amount = ojson::array();
        for (const auto& row : a.amount) amount.push_back(integers_json(row));
        list.push_back({{"type", a.type}, {"count", a.count}, {"amount", amount}});
      }
      rep["solution"] = {{"assignments", list}};
    }
  }
  if (flags.timing) {
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
    rep["stats"]["wall_ms"] = ms;
  }
  print(out, rep);
  return feasible ? kOk : kInfeasible;
}

int validate_command(const std::string& path, const std::string& solution_path, const Flags& flags, std::ostream& out) {
  const Instance inst = parse_instance(read_json_file(path));
  const json doc = read_json_file(solution_path);
  const json& body = doc.is_object() && doc.contains("solution") ? doc["solution"] : doc;
  ojson rep;
  std::vector<std::string> violations;
  if (const auto* s = std::get_if<SchedulingInstance>(&inst)) {
    std::string name = flags.objective;
    if (name.empty() && doc.is_object() && doc.contains("objective") && doc["objective"].is_string()) {
      name = doc["objective"].get<std::string>();
    }
    const ObjectiveSpec obj = ObjectiveSpec::parse(name.empty() ? "cmax" : name);
    const ScheduleReport r = validate_schedule(*s, schedule_from_json(body), obj);
    violations = r.violations;
    rep["objective"] = obj.str();
    rep["value"] = r.value.str();
  } else if (const auto* m = std::get_if<MimoInstance>(&inst)) {
    Reader rd;
    MimoSolution sol = mimo_solution_from_json(rd, body);
    if (const json* v = rd.field(doc, "value", "", false)) {
      sol.objective = rd.rational(*v, "/value");
    } else {
      sol.objective = Rational(0);
      for (std::size_t i = 0; i < std::min(sol.per_type.size(), m->types.size()); ++i) {
        for (const MimoElement& e : sol.per_type[i]) {
          if (e.x.size() == m->d && e.aux.size() == m->types[i].aux) {
            sol.objective += element_cost(m->types[i], m->d, e.x, e.aux) * Rational(e.count);
          }
        }
      }
    }
    rd.finish();
    violations = verify_solution(*m, sol);
    rep["value"] = sol.objective.str();
  } else {
    throw InputError("validate supports scheduling and mimo instances");
  }
  ojson list = ojson::array();
  for (const std::string& v : violations) list.push_back(v);
  rep["violations"] = list;
  print(out, rep);
  return violations.empty() ? kOk : kInfeasible;
}

int brute_force_command(const std::string& path, const Flags& flags, std::ostream& out) {
  const Instance inst = parse_instance(read_json_file(path));
  const auto* s = std::get_if<SchedulingInstance>(&inst);
  if (!s) throw InputError("brute-force supports scheduling instances");
  const ObjectiveSpec obj = ObjectiveSpec::parse(flags.objective.empty() ? "cmax" : flags.objective);
  const auto value = brute_force_schedule(*s, obj);
  ojson rep;
  rep["status"] = value ? "optimal" : "infeasible";
  rep["objective"] = obj.str();
  if (value) rep["value"] = value->str();
  print(out, rep);
  return value ? kOk : kInfeasible;
}

int model_dump_command(const std::string& path, const Flags& flags, std::ostream& out) {
  const Instance inst = parse_instance(read_json_file(path));
  const auto* s = std::get_if<SchedulingInstance>(&inst);
  if (!s) throw InputError("model-dump supports scheduling instances");
  const ObjectiveSpec obj = ObjectiveSpec::parse(flags.objective.empty() ? "cmax" : flags.objective);
  const bool needs_probe = obj.kind == ObjectiveSpec::Kind::kCmax || obj.kind == ObjectiveSpec::Kind::kCmin ||
                           obj.kind == ObjectiveSpec::Kind::kLmax || obj.kind == ObjectiveSpec::Kind::kFmax;
  if (needs_probe && !flags.probe) throw InputError(obj.str() + " models need --probe");
  const auto models = build_models(*s, obj, flags.probe.value_or(0));
  const auto types = machine_types(*s);
  for (std::size_t i = 0; i < models.size(); ++i) {
    out << "\\ machine kind " << types[i].kind << " speed class " << types[i].speed_class << " speed "
        << types[i].speed.str() << "\n";
    out << models[i].dump();
  }
  return kOk;
}

int gen_corpus_command(std::uint64_t seed, std::size_t count, bool unit, std::ostream& out) {
  std::mt19937_64 rng(seed);
  CorpusParams params;
  if (unit) params.speed_set = {Rational(1)};
  ojson list = ojson::array();
  for (std::size_t i = 0; i < count; ++i) list.push_back(instance_to_json(random_scheduling_instance(rng, params)));
  print(out, {{"seed", seed}, {"instances", list}});
  return kOk;
}

}  // namespace

SchemaError::SchemaError(std::vector<std::string> p) : std::runtime_error(join_problems(p)), problems(std::move(p)) {}

Instance parse_instance(const json& doc) {
  Reader rd;
  const json* kind = rd.field(doc, "kind", "");
  if (!kind || !kind->is_string()) {
    if (kind) rd.fail("/kind", "expected a string");
    rd.finish();
  }
  const std::string k = kind->get<std::string>();
  Instance out;
  if (k == "mimo") {
    out = parse_mimo(rd, doc);
  } else if (k == "scheduling") {
    out = parse_scheduling(rd, doc);
  } else if (k == "knapsack") {
    out = parse_knapsack(rd, doc);
  } else if (k == "binpacking") {
    BinPackingInput b;
    b.capacity = rd.required_integer(doc, "capacity", "");
    b.limit = rd.optional_integer(doc, "limit", "");
    parse_items(rd, doc, b.sizes, b.counts);
    out = b;
  } else if (k == "cuttingstock") {
    CuttingStockInput c;
    parse_items(rd, doc, c.sizes, c.counts);
    if (const json* rolls = rd.array(doc, "rolls", "")) {
      for (std::size_t i = 0; i < rolls->size(); ++i) {
        const std::string p = ptr_at("", "rolls", i);
        RollType r;
        r.length = rd.required_integer((*rolls)[i], "length", p);
        const json* cost = rd.field((*rolls)[i], "cost", p);
        r.cost = cost ? rd.rational(*cost, p + "/cost") : Rational(0);
        c.rolls.push_back(r);
      }
    }
    out = c;
  } else if (k == "surfing") {
    out = parse_surfing(rd, doc);
  } else {
    rd.fail("/kind", "unknown kind \"" + k + "\"");
  }
  rd.finish();
  return out;
}

ojson instance_to_json(const Instance& inst) {
  ojson j;
  if (const auto* m = std::get_if<MimoInstance>(&inst)) {
    j["kind"] = "mimo";
    j["d"] = m->d;
    j["target"] = integers_json(m->target);
    ojson types = ojson::array();
    for (const MimoType& tp : m->types) {
      ojson a = ojson::array();
      for (std::size_t r = 0; r < tp.a.rows; ++r) {
        ojson row = ojson::array();
        for (std::size_t c = 0; c < tp.a.cols; ++c) row.push_back(tp.a.at(r, c).get_si());
        a.push_back(row);
      }
      ojson obj = ojson::array();
      for (const MimoObjectiveTerm& term : tp.objective) {
        ojson t{{"coordinate", term.coordinates.at(0)}};
        if (term.linear) t["linear"] = term.linear->str();
        if (term.table) {
          ojson tab = ojson::array();
          for (const Rational& q : *term.table) tab.push_back(q.str());
          t["table"] = tab;
          t["table_lower"] = term.table_lower;
        }
        obj.push_back(t);
      }
      types.push_back({{"multiplicity", tp.multiplicity}, {"aux", tp.aux}, {"a", a}, {"b", integers_json(tp.b)},
                       {"objective", obj}});
    }
    j["types"] = types;
  } else if (const auto* s = std::get_if<SchedulingInstance>(&inst)) {
    j["kind"] = "scheduling";
    ojson kinds = ojson::array();
    for (const MachineKind& k : s->kinds) {
      ojson speeds = ojson::array();
      for (const SpeedClass& c : k.speeds) speeds.push_back({{"speed", c.speed.str()}, {"count", c.count}});
      kinds.push_back({{"speeds", speeds}});
    }
    j["machine_kinds"] = kinds;
    ojson jobs = ojson::array();
    for (const JobType& jt : s->jobs) {
      ojson per = ojson::array();
      for (const JobOnKind& on : jt.per_kind) {
        ojson e;
        e["size"] = on.size ? ojson(*on.size) : ojson(nullptr);
        e["release"] = on.release;
        e["due"] = on.due ? ojson(*on.due) : ojson(nullptr);
        per.push_back(e);
      }
      jobs.push_back({{"count", jt.count}, {"weight", jt.weight}, {"per_kind", per}});
    }
    j["jobs"] = jobs;
  } else if (const auto* k = std::get_if<KnapsackInstance>(&inst)) {
    j["kind"] = "knapsack";
    j["dims"] = k->dims;
    ojson items = ojson::array(), bins = ojson::array();
    for (const ItemType& it : k->items) items.push_back({{"size", integers_json(it.size)}, {"count", it.count}});
    for (const KnapsackType& b : k->knapsacks) bins.push_back({{"capacity", integers_json(b.capacity)}, {"count", b.count}});
    j["items"] = items;
    j["knapsacks"] = bins;
  } else if (const auto* b = std::get_if<BinPackingInput>(&inst)) {
    j["kind"] = "binpacking";
    j["capacity"] = b->capacity;
    if (b->limit) j["limit"] = *b->limit;
    j["items"] = items_json(b->sizes, b->counts);
  } else if (const auto* c = std::get_if<CuttingStockInput>(&inst)) {
    j["kind"] = "cuttingstock";
    j["items"] = items_json(c->sizes, c->counts);
    ojson rolls = ojson::array();
    for (const RollType& r : c->rolls) rolls.push_back({{"length", r.length}, {"cost", r.cost.str()}});
    j["rolls"] = rolls;
  } else if (const auto* sf = std::get_if<SurfingInstance>(&inst)) {
    j["kind"] = "surfing";
    j["commodities"] = sf->commodities;
    j["servers"] = sf->servers;
    ojson supply = ojson::array();
    for (const auto& row : sf->supply) supply.push_back(integers_json(row));
    j["supply"] = supply;
    ojson surfers = ojson::array();
    for (const SurferType& st : sf->surfers) {
      ojson cost = ojson::array();
      for (const auto& row : st.cost) cost.push_back(integers_json(row));
      surfers.push_back({{"count", st.count},
                         {"demand", integers_json(st.demand)},
                         {"capacity", integers_json(st.capacity)},
                         {"cost", cost}});
    }
    j["surfers"] = surfers;
  }
  return j;
}

ojson schedule_to_json(const Schedule& s) {
  ojson machines = ojson::array();
  for (const MachineSchedule& ms : s.machines) {
    ojson jobs = ojson::array();
    for (const ScheduledJob& sj : ms.jobs) {
      jobs.push_back({{"job_type", sj.job_type}, {"start", sj.start.str()}, {"end", sj.end.str()}});
    }
    machines.push_back({{"kind", ms.kind}, {"speed_class", ms.speed_class}, {"count", ms.count}, {"jobs", jobs}});
  }
  ojson j{{"machines", machines}};
  if (!s.late.empty()) j["late"] = integers_json(s.late);
  return j;
}

Schedule schedule_from_json(const json& doc) {
  Reader rd;
  Schedule s;
  auto index = [&](const json& obj, const char* key, const std::string& p) {
    const std::int64_t v = rd.required_integer(obj, key, p);
    if (v < 0) rd.fail(p + "/" + key, "must be nonnegative");
    return static_cast<std::size_t>(std::max<std::int64_t>(v, 0));
  };
  if (const json* machines = rd.array(doc, "machines", "")) {
    for (std::size_t i = 0; i < machines->size(); ++i) {
      const json& m = (*machines)[i];
      const std::string p = ptr_at("", "machines", i);
      MachineSchedule ms;
      ms.kind = index(m, "kind", p);
      ms.speed_class = index(m, "speed_class", p);
      ms.count = rd.integer(m, "count", p, 1);
      if (const json* jobs = rd.array(m, "jobs", p)) {
        for (std::size_t k = 0; k < jobs->size(); ++k) {
          const std::string q = ptr_at(p, "jobs", k);
          ScheduledJob sj;
          sj.job_type = index((*jobs)[k], "job_type", q);
          const json* start = rd.field((*jobs)[k], "start", q);
          const json* end = rd.field((*jobs)[k], "end", q);
          if (start) sj.start = rd.rational(*start, q + "/start");
          if (end) sj.end = rd.rational(*end, q + "/end");
          ms.jobs.push_back(sj);
        }
      }
      s.machines.push_back(std::move(ms));
    }
  }
  if (rd.field(doc, "late", "", false)) s.late = rd.integers(doc, "late", "");
  rd.finish();
  return s;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"High-multiplicity scheduling and packing via huge N-fold integer programming"};
  app.require_subcommand(1);
  Flags flags;
  std::string path, solution;
  std::uint64_t seed = 1;
  std::size_t count = 10;
  bool unit = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--objective", flags.objective,
                    "cmax, cmin, lmax, fmax, sumwu, lp:<p>, sumwc, sumwf or sumwt (scheduling only)");
    cmd->add_option("--strategy", flags.strategy, "N-fold solve mode")
        ->check(CLI::IsMember({"auto", "direct", "huge"}));
    cmd->add_option("--conf-cap", flags.conf_cap, "configuration enumeration cap");
  };
  CLI::App* solve = app.add_subcommand("solve", "solve an instance and print a JSON report");
  add_common(solve);
  solve->add_flag("--timing", flags.timing, "add wall time to the statistics (not deterministic)");
  solve->add_option("instance", path, "instance file")->required();

  CLI::App* validate = app.add_subcommand("validate", "check a schedule or MIMO solution against an instance");
  validate->add_option("--objective", flags.objective, "objective used for due dates and the value");
  validate->add_option("instance", path, "instance file")->required();
  validate->add_option("solution", solution, "solution or solve report")->required();

  CLI::App* brute = app.add_subcommand("brute-force", "exhaustive optimum of a small scheduling instance");
  brute->add_option("--objective", flags.objective, "objective");
  brute->add_option("instance", path, "instance file")->required();

  CLI::App* dump = app.add_subcommand("model-dump", "print the cycle models of one probe in LP format");
  dump->add_option("--objective", flags.objective, "objective");
  dump->add_option("--probe", flags.probe, "makespan or load guess, or lateness shift, in scaled time");
  dump->add_option("instance", path, "instance file")->required();

  CLI::App* gen = app.add_subcommand("gen-corpus", "print seeded random scheduling instances");
  gen->add_option("--seed", seed, "generator seed");
  gen->add_option("--count", count, "number of instances");
  gen->add_flag("--unit", unit, "unit speeds only");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kError;
  }
  try {
    if (*solve) return solve_command(path, flags, out);
    if (*validate) return validate_command(path, solution, flags, out);
    if (*brute) return brute_force_command(path, flags, out);
    if (*dump) return model_dump_command(path, flags, out);
    if (*gen) return gen_corpus_command(seed, count, unit, out);
  } catch (const CapacityError& e) {
    err << "error: " << e.what() << "\n";
    return kGuard;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}

}  // namespace hmo::cli
