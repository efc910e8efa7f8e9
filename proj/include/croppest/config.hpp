#pragma once

// Run configuration shared by all CLI commands.
//
// File format: one `key = value` per line, `#` starts a comment, blank lines
// are ignored. Keys are the model parameter names plus
// A1, A2, B1, B2, X0, S0, I0, A0, tf, dt.

#include <array>
#include <filesystem>
#include <string>
#include <string_view>

#include "croppest/model.hpp"

namespace croppest {

enum class Command { Simulate, Equilibria, Stability, Bifurcate, Optimize };

struct RunConfig {
    ModelParams params;
    ObjectiveWeights weights;
    State initial{0.2, 0.07, 0.05, 0.5};
    double tf = 2000.0;
    double dt = 0.05;

    /// Published defaults; optimize runs over 100 days at dt = 0.01, the
    /// other commands over 2000 days at dt = 0.05.
    static RunConfig defaults_for(Command cmd);

    static constexpr std::array<std::string_view, 10> extra_keys{
        "A1", "A2", "B1", "B2", "X0", "S0", "I0", "A0", "tf", "dt"};

    /// Throws ConfigError on an unknown key.
    void set(std::string_view key, double value);
    [[nodiscard]] double get(std::string_view key) const;

    /// Applies `key = value` lines. Throws ConfigError naming the line on a
    /// syntax error, unknown key or non-numeric value.
    void apply_text(std::string_view text);
    void apply_file(const std::filesystem::path& path);

    /// Applies a single `key=value` override.
    void apply_override(std::string_view assignment);

    /// Every key with a round-trippable value, in a fixed order.
    [[nodiscard]] std::string to_text() const;

    /// Throws ConfigError when params, weights, initial state or grid are invalid.
    void validate() const;

    bool operator==(const RunConfig&) const = default;
};

/// Every accepted key, model parameters first.
std::array<std::string_view, 24> config_keys();

}  // namespace croppest
