#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "hmo/applications.hpp"
#include "hmo/mimo.hpp"
#include "hmo/scheduling.hpp"
#include "json.hpp"

namespace hmo::cli {

// Stable exit codes.
enum Exit : int { kOk = 0, kError = 1, kInfeasible = 2, kGuard = 3 };

struct BinPackingInput {
  std::vector<std::int64_t> sizes, counts;
  std::int64_t capacity = 0;
  std::optional<std::int64_t> limit;
};

struct CuttingStockInput {
  std::vector<std::int64_t> sizes, counts;
  std::vector<RollType> rolls;
};

using Instance = std::variant<MimoInstance, SchedulingInstance, KnapsackInstance, BinPackingInput, CuttingStockInput,
                              SurfingInstance>;

// Schema violations, each prefixed by the JSON pointer of the offending value.
struct SchemaError : std::runtime_error {
  std::vector<std::string> problems;
  explicit SchemaError(std::vector<std::string> p);
};

Instance parse_instance(const nlohmann::json& doc);
nlohmann::ordered_json instance_to_json(const Instance& inst);

nlohmann::ordered_json schedule_to_json(const Schedule& s);
Schedule schedule_from_json(const nlohmann::json& doc);

// Runs one command line (argv[0] is the program name) and returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hmo::cli
