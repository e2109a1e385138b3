#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "hecc/interp.hpp"
#include "hecc/topology.hpp"

namespace hecc {

/// Outcome of one command. Printed as a human-readable text block followed
/// by a single JSON line.
struct QueryReport {
    std::string command;
    std::vector<std::string> arguments;
    std::string model;   // builtin name or model file path; empty when unused
    std::string status;  // ok, error, valid, invalid, vacuous, found, none
    std::string result;
    int exit_code = 0;
    nlohmann::ordered_json details = nlohmann::ordered_json::object();

    std::string to_json() const;
    static QueryReport from_json(std::string_view text);
    std::string text() const;

    friend bool operator==(const QueryReport& a, const QueryReport& b);
};

/// Builtin name or path to a model file.
FiniteTopology load_model(const std::string& name_or_path);

struct SearchResult {
    std::optional<FiniteTopology> model;
    std::size_t models_tried = 0;
};

/// First model (by point count, family mask, reference point) where the
/// axiom, if any, is valid and the goal is not.
SearchResult search_countermodel(const Term& goal, const std::optional<Term>& axiom, std::size_t max_points,
                                 EvalOptions options = {});

/// Normalization fuel, honoring HEYTING_ECC_FUEL.
std::size_t fuel_from_environment();

/// Runs the command line `args` (without the program name), printing to
/// `out`/`err`. Returns the process exit status.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hecc
