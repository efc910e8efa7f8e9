#include "croppest/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "croppest/errors.hpp"
#include "croppest/integrate.hpp"

namespace croppest {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_number(std::string_view text, std::string_view context) {
    double value = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (text.empty() || ec != std::errc{} || ptr != end || !std::isfinite(value))
        throw ConfigError("invalid number '" + std::string(text) + "' in " + std::string(context));
    return value;
}

}  // namespace

std::array<std::string_view, 24> config_keys() {
    std::array<std::string_view, 24> keys{};
    std::size_t k = 0;
    for (auto name : ModelParams::field_names) keys[k++] = name;
    for (auto name : RunConfig::extra_keys) keys[k++] = name;
    return keys;
}

RunConfig RunConfig::defaults_for(Command cmd) {
    RunConfig cfg;
    if (cmd == Command::Optimize) {
        cfg.tf = 100.0;
        cfg.dt = 0.01;
    }
    return cfg;
}

void RunConfig::set(std::string_view key, double value) {
    if (const auto m = ModelParams::member(key)) {
        params.*(*m) = value;
        return;
    }
    if (key == "A1") weights.A1 = value;
    else if (key == "A2") weights.A2 = value;
    else if (key == "B1") weights.B1 = value;
    else if (key == "B2") weights.B2 = value;
    else if (key == "X0") initial.X = value;
    else if (key == "S0") initial.S = value;
    else if (key == "I0") initial.I = value;
    else if (key == "A0") initial.A = value;
    else if (key == "tf") tf = value;
    else if (key == "dt") dt = value;
    else throw ConfigError("unknown configuration key '" + std::string(key) + "'");
}

double RunConfig::get(std::string_view key) const {
    if (const auto m = ModelParams::member(key)) return params.*(*m);
    if (key == "A1") return weights.A1;
    if (key == "A2") return weights.A2;
    if (key == "B1") return weights.B1;
    if (key == "B2") return weights.B2;
    if (key == "X0") return initial.X;
    if (key == "S0") return initial.S;
    if (key == "I0") return initial.I;
    if (key == "A0") return initial.A;
    if (key == "tf") return tf;
    if (key == "dt") return dt;
    throw ConfigError("unknown configuration key '" + std::string(key) + "'");
}

void RunConfig::apply_text(std::string_view text) {
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        const std::string where = "line " + std::to_string(line_no);
        if (eq == std::string_view::npos) throw ConfigError("expected 'key = value' on " + where);
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        try {
            set(key, parse_number(value, where));
        } catch (const ConfigError& e) {
            throw ConfigError(std::string(e.what()) + " (" + where + ")");
        }
    }
}

void RunConfig::apply_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    apply_text(buf.str());
}

void RunConfig::apply_override(std::string_view assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos) throw ConfigError("override must look like key=value");
    const auto key = trim(assignment.substr(0, eq));
    set(key, parse_number(trim(assignment.substr(eq + 1)), "override for " + std::string(key)));
}

std::string RunConfig::to_text() const {
    std::ostringstream out;
    out << std::setprecision(17);
    for (auto key : config_keys()) out << key << " = " << get(key) << '\n';
    return out.str();
}

void RunConfig::validate() const {
    try {
        params.validate();
        weights.validate();
        check_state(initial, 0.0);
        (void)TimeGrid::from_step(0.0, tf, dt);
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
}

}  // namespace croppest
