#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "hmo/lp.hpp"
#include "hmo/mimo.hpp"
#include "hmo/nfold.hpp"
#include "hmo/rational.hpp"

namespace hmo {

// ---------------------------------------------------------------------------
// Instances

struct JobOnKind {
  std::optional<std::int64_t> size;  // nullopt: the job cannot run on this kind
  std::int64_t release = 0;
  std::optional<std::int64_t> due;  // nullopt: no due date
};

struct JobType {
  std::int64_t count = 0;  // n_j
  std::int64_t weight = 1;
  std::vector<JobOnKind> per_kind;  // one entry per machine kind
};

struct SpeedClass {
  Rational speed{1};  // in (0, 1]
  std::int64_t count = 0;
};

struct MachineKind {
  std::vector<SpeedClass> speeds;
};

struct SchedulingInstance {
  std::vector<JobType> jobs;
  std::vector<MachineKind> kinds;

  std::size_t d() const { return jobs.size(); }
  std::int64_t job_count() const;
  std::int64_t machine_count() const;
  // Throws InputError naming the offending job type or kind.
  void validate() const;
};

// A (kind, speed class) pair; the unit of one MIMO type.
struct MachineType {
  std::size_t kind = 0;
  std::size_t speed_class = 0;
  Rational speed{1};
  std::int64_t count = 0;
};

std::vector<MachineType> machine_types(const SchedulingInstance& inst);

struct ObjectiveSpec {
  enum class Kind { kCmax, kCmin, kLmax, kFmax, kSumWU, kLp, kSumWC, kSumWF, kSumWT };
  Kind kind = Kind::kCmax;
  unsigned power = 2;  // ℓ_p exponent

  // "cmax", "cmin", "lmax", "fmax", "sumwu", "lp:<p>", "sumwc", "sumwf", "sumwt".
  static ObjectiveSpec parse(std::string_view text);
  std::string str() const;
  // Jobs must finish by their due dates.
  bool respects_due() const;
  // Σ w_j C_j style objectives handled by the ordered model.
  bool min_sum() const;
};

// ---------------------------------------------------------------------------
// Schedules

struct ScheduledJob {
  std::size_t job_type = 0;
  Rational start, end;
};

// `count` identical machines of one speed class running the same job list.
struct MachineSchedule {
  std::size_t kind = 0;
  std::size_t speed_class = 0;
  std::int64_t count = 1;
  std::vector<ScheduledJob> jobs;
};

struct Schedule {
  std::vector<MachineSchedule> machines;
  std::vector<std::int64_t> late;  // per job type, Σ w_j U_j only
};

struct ScheduleReport {
  std::vector<std::string> violations;
  Rational value;
  bool ok() const { return violations.empty(); }
};

// Checks machine counts, job multiplicities, durations p/s, releases,
// due dates (for due-respecting objectives) and per-machine disjointness, and
// computes the exact objective value from the intervals.
ScheduleReport validate_schedule(const SchedulingInstance& inst, const Schedule& schedule,
                                 const ObjectiveSpec& objective);

// ---------------------------------------------------------------------------
// One machine type as the cycle model sees it

// Job data in scaled time units: every duration p/s is an integer once time
// is multiplied by the lcm of the speed numerators.
struct MachineJobs {
  MachineType machine;
  std::int64_t time_scale = 1;
  Rational speed{1};  // speed per scaled time unit
  std::vector<std::int64_t> size, release, weight, count;
  std::vector<std::optional<std::int64_t>> due;
  std::vector<bool> usable;  // false for sizes eliminated as ∞

  std::size_t d() const { return size.size(); }
  // Scaled duration p_j / speed, an integer.
  std::int64_t duration(std::size_t j) const;
  // max r + Σ n_j·duration over usable types: no left-aligned schedule runs longer.
  std::int64_t horizon() const;
  std::int64_t max_size() const;  // p_max over usable types with n_j > 0, at least 1
};

// lcm of the speed numerators; 1 for unit and 1/q speeds.
std::int64_t time_scale(const SchedulingInstance& inst);

// ∞ sizes become unit jobs with r = d, which no cycle admits.
MachineJobs machine_jobs(const SchedulingInstance& inst, const MachineType& mt, std::int64_t scale);

struct Cycle {
  bool external = false;
  std::size_t left = 0, right = 0;  // indices into T; internal cycles have right = left + 1

  std::size_t first() const { return left + 1; }  // first interior critical index
  std::size_t last() const { return right - 1; }   // last interior critical index
  std::string name() const;
};

// Sorted distinct releases and finite due dates of usable types with n_j > 0;
// Σ w_j T_j appends the horizon.
std::vector<std::int64_t> critical_times(const MachineJobs& jobs, const ObjectiveSpec& objective);

// Internal cycles [t_k, t_{k+1}] then external ones spanning t_a..t_b, in the
// reconstruction order: int_1, ext_{2,2}, …, ext_{2,|T|−1}, int_2, ext_{3,3}, …
std::vector<Cycle> potential_cycles(std::size_t num_times);

bool chi(const MachineJobs& jobs, const std::vector<std::int64_t>& times, std::size_t j, const Cycle& c,
         const ObjectiveSpec& objective);

// An external cycle conflicts with every other cycle overlapping the closed
// span of its interior critical times.
bool incompatible(const Cycle& a, const Cycle& b);

// Job types ordered by nonincreasing w_{k,j}/p_j, ties by index; for Σ w_j T_j
// the weight of type j in segment k is w_j when t_k ≥ d_j and 0 otherwise.
std::vector<std::size_t> smith_order(const MachineJobs& jobs, const std::vector<std::int64_t>& times, std::size_t k,
                                     const ObjectiveSpec& objective);

struct ModelRow {
  std::vector<std::pair<std::size_t, std::int64_t>> coef;
  Relation relation = Relation::kLe;
  std::int64_t rhs = 0;
  std::string family;
};

struct CycleModel {
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  MachineJobs jobs;
  ObjectiveSpec objective;
  std::vector<std::int64_t> times;
  std::vector<Cycle> cycles;
  std::vector<std::vector<bool>> chi;  // [j][cycle]
  std::vector<std::pair<std::size_t, std::size_t>> incompatible_pairs;

  // Variables: x first, then everything projected away.
  std::vector<std::string> names;
  Config lower, upper;
  RationalVector linear;
  std::map<std::size_t, RationalVector> tables;  // values over [lower, upper]
  std::vector<ModelRow> rows;

  std::vector<std::size_t> x;                                      // [j]
  std::vector<std::vector<std::size_t>> y;                         // [j][cycle]
  std::vector<std::size_t> z;                                      // [cycle]
  std::vector<std::map<std::int64_t, std::size_t>> left_part;      // [cycle] p → y_{C,L,p}
  std::vector<std::map<std::int64_t, std::size_t>> right_part;     // [cycle] p → y_{C,R,p}
  std::vector<std::vector<std::map<std::int64_t, std::size_t>>> product;  // [j][cycle] p → y_{j,C,R,p}
  std::vector<std::vector<std::size_t>> alpha;                     // [segment][0 or 1+j]
  std::vector<std::vector<std::size_t>> order;                     // [segment] eligible types, Smith order
  std::size_t load = kNone;                                        // ℓ_p load variable

  std::size_t num_vars() const { return names.size(); }
  std::size_t add_var(std::string name, std::int64_t lo, std::int64_t hi);
  void add_row(ModelRow row);

  // Rows of the A x ≤ b form excluding single-variable bounds; equalities count twice.
  std::size_t constraint_rows() const;
  std::int64_t max_coefficient() const;
  MimoType to_mimo(std::int64_t multiplicity) const;
  // Objective of a full variable vector (x then the rest).
  Rational evaluate(const Config& values) const;
  // Violated rows or bounds of a full variable vector.
  std::vector<std::string> check(const Config& values) const;
  // LP-format text with exact coefficients.
  std::string dump() const;
};

struct ModelRequest {
  ObjectiveSpec objective;
  std::optional<std::int64_t> min_load;  // C_min probes, in scaled time
};

// Cycle model for C_max-style feasibility (also C_min, L_max, F_max, Σ w_j U_j, ℓ_p).
CycleModel emit_cmax_polytope(const MachineJobs& jobs, const ModelRequest& request);
// Ordered model for Σ w_j C_j, Σ w_j F_j and Σ w_j T_j; unit speed only.
CycleModel emit_minsum_polytope(const MachineJobs& jobs, const ObjectiveSpec& objective);

// Algorithms for turning a feasible brick back into one machine's jobs.
MachineSchedule reconstruct_schedule(const CycleModel& model, const Config& values);

// Multiplies every objective coefficient and table entry by the lcm of their
// denominators; returns the factor.
mpz_class scale_objective_to_integral(std::vector<MimoType>& blocks);

// ---------------------------------------------------------------------------
// Solving

enum class ScheduleStatus { kOptimal, kInfeasible };

struct SchedulingStats {
  std::size_t probes = 0;
  std::size_t configurations = 0;
  std::size_t nodes = 0;
  std::size_t lp_solves = 0;
  std::string objective_scale = "1";
};

// One solved brick: the full variable vector of models[model], used by
// `count` identical machines.
struct SolvedBrick {
  std::size_t model = 0;
  Config values;
  std::int64_t count = 0;
};

struct SchedulingResult {
  ScheduleStatus status = ScheduleStatus::kInfeasible;
  Rational value;
  Schedule schedule;
  SchedulingStats stats;
  // Models of the final successful probe, one per machine type.
  std::vector<CycleModel> models;
  std::vector<SolvedBrick> bricks;
};

SchedulingResult solve_cmax(const SchedulingInstance& inst, const NfoldOptions& options = {});
SchedulingResult solve_max_objective(const SchedulingInstance& inst, ObjectiveSpec::Kind kind,
                                     const NfoldOptions& options = {});
SchedulingResult solve_throughput(const SchedulingInstance& inst, const NfoldOptions& options = {});
SchedulingResult solve_cmin(const SchedulingInstance& inst, const NfoldOptions& options = {});
SchedulingResult solve_lp_norm(const SchedulingInstance& inst, unsigned power, const NfoldOptions& options = {});
SchedulingResult solve_minsum(const SchedulingInstance& inst, const ObjectiveSpec& objective,
                              const NfoldOptions& options = {});
SchedulingResult solve_scheduling(const SchedulingInstance& inst, const ObjectiveSpec& objective,
                                  const NfoldOptions& options = {});

// The models a solve would build for one probe value (C̄ for C_max/C_min, φ for
// L_max/F_max, ignored otherwise), one per machine type.
std::vector<CycleModel> build_models(const SchedulingInstance& inst, const ObjectiveSpec& objective,
                                     std::int64_t probe);

// ---------------------------------------------------------------------------
// Oracle and corpus

// Exhaustive optimum: all assignments of jobs to machines, every distinct job
// order per machine with earliest starts. nullopt when infeasible. Throws
// CapacityError beyond 8 jobs or 3 machines.
std::optional<Rational> brute_force_schedule(const SchedulingInstance& inst, const ObjectiveSpec& objective);

struct CorpusParams {
  std::size_t max_machines = 3;
  std::size_t max_kinds = 2;
  std::size_t max_speeds = 2;
  std::vector<Rational> speed_set{Rational(1), Rational(1, 2)};  // first entry used by unit kinds
  std::size_t max_types = 3;
  std::int64_t max_size = 4;
  std::int64_t max_jobs = 8;
  std::int64_t max_time = 16;
  std::int64_t due_percent = 50;  // chance that a finite size also gets a due date
};

SchedulingInstance random_scheduling_instance(std::mt19937_64& rng, const CorpusParams& params);

}  // namespace hmo
