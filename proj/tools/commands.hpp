#pragma once

// One handler per subcommand. A handler maps a record (a JSON object whose
// keys mirror the subcommand's flags) to a result record.

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace polycurve::cli {

using json = nlohmann::ordered_json;

enum class Mode { Exact, Float };

struct Config {
    double tol = 1e-9;
    std::uint64_t seed = 0;
    std::optional<Mode> mode;  // unset: the subcommand's natural mode
};

/// A record field that is missing or has the wrong shape.
class RecordError : public std::runtime_error {
public:
    RecordError(std::string field, const std::string& what, bool missing = false)
        : std::runtime_error(what), field_(std::move(field)), missing_(missing) {}
    const std::string& field() const { return field_; }
    bool missing() const { return missing_; }

private:
    std::string field_;
    bool missing_;
};

/// Valid on the command line but not for this subcommand (e.g. --mode exact
/// for a float-only check): a usage error.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Outcome {
    json record;
    std::string verdict;  // key for the batch summary
    bool failed = false;  // a check ran but did not pass
};

Outcome classify_surface_cmd(const json& rec, const Config& cfg);
Outcome classify_cubic_cmd(const json& rec, const Config& cfg);
Outcome check_tensor_cmd(const json& rec, const Config& cfg);
Outcome cohomology_cmd(const json& rec, const Config& cfg);
Outcome elliptic_cmd(const json& rec, const Config& cfg);
Outcome verify_holonomy_cmd(const json& rec, const Config& cfg);
Outcome fixed_point_cmd(const json& rec, const Config& cfg);

}  // namespace polycurve::cli
