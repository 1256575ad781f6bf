#include "sqzchain/config.hpp"

#include <charconv>
#include <cmath>
#include <functional>
#include <limits>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <variant>

#include <fmt/format.h>

#include "sqzchain/error.hpp"
#include "sqzchain/noise_algebra.hpp"

namespace sqz {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using Value = std::variant<double, std::vector<double>, std::vector<std::string>>;

enum class Kind { Number, NumberList, StringList };

struct Range {
    double lo = -kInf;
    double hi = kInf;
    bool lo_open = false;
    bool hi_open = false;
    bool integer = false;

    bool contains(double x) const {
        if (integer && x != std::floor(x)) return false;
        const bool above = lo_open ? x > lo : x >= lo;
        const bool below = hi_open ? x < hi : x <= hi;
        return above && below;
    }

    std::string describe() const {
        auto bound = [](double v) { return std::isinf(v) ? std::string(v < 0 ? "-inf" : "inf") : fmt::format("{}", v); };
        return fmt::format("{}{}, {}{}", lo_open ? '(' : '[', bound(lo), bound(hi), hi_open ? ')' : ']');
    }
};

const Range kAny{};
const Range kNonNegative{0.0, kInf, false, true};
const Range kPositive{0.0, kInf, true, true};
const Range kFraction{0.0, 1.0, false, true};
const Range kCount{1.0, 1e6, false, false, true};

struct KeySpec {
    std::string_view section;
    std::string_view key;
    Kind kind;
    Range range;
    std::function<void(RunConfig&, Value&&)> store;
};

template <typename Section, typename Field>
auto setter(Section RunConfig::*section, std::optional<Field> Section::*field) {
    return [section, field](RunConfig& cfg, Value&& v) { (cfg.*section).*field = std::get<Field>(std::move(v)); };
}

const std::vector<KeySpec>& key_specs() {
    using C = RunConfig;
    static const std::vector<KeySpec> specs = {
        {"chain", "shg_coeff_pct_per_w", Kind::Number, kNonNegative, setter(&C::chain, &C::Chain::shg_coeff_pct_per_w)},
        {"chain", "shg_norm_pct_per_w_cm2", Kind::Number, kNonNegative, setter(&C::chain, &C::Chain::shg_norm_pct_per_w_cm2)},
        {"chain", "length_cm", Kind::Number, kPositive, setter(&C::chain, &C::Chain::length_cm)},
        {"chain", "rho", Kind::Number, kFraction, setter(&C::chain, &C::Chain::rho)},
        {"chain", "excess_loss_per_w", Kind::Number, kNonNegative, setter(&C::chain, &C::Chain::excess_loss_per_w)},
        {"chain", "gain_db", Kind::Number, kNonNegative,
         [](C& cfg, Value&& v) {
             const double db = std::get<double>(v);
             cfg.chain.gain_db = db;
             cfg.chain.detection_power_gain = from_decibels(db);
         }},
        {"chain", "center_wavelength_nm", Kind::Number, kPositive, setter(&C::chain, &C::Chain::center_wavelength_nm)},

        {"sweep", "pumps_w", Kind::NumberList, kNonNegative, setter(&C::sweep, &C::Sweep::pumps_w)},
        {"sweep", "pump_start_w", Kind::Number, kNonNegative, setter(&C::sweep, &C::Sweep::pump_start_w)},
        {"sweep", "pump_stop_w", Kind::Number, kNonNegative, setter(&C::sweep, &C::Sweep::pump_stop_w)},
        {"sweep", "pump_count", Kind::Number, kCount, setter(&C::sweep, &C::Sweep::pump_count)},
        {"sweep", "noise_sigma_db", Kind::Number, kNonNegative, setter(&C::sweep, &C::Sweep::noise_sigma_db)},

        {"spectrum", "wavelength_start_nm", Kind::Number, kPositive, setter(&C::spectrum, &C::Spectrum::wavelength_start_nm)},
        {"spectrum", "wavelength_stop_nm", Kind::Number, kPositive, setter(&C::spectrum, &C::Spectrum::wavelength_stop_nm)},
        {"spectrum", "wavelength_step_nm", Kind::Number, kPositive, setter(&C::spectrum, &C::Spectrum::wavelength_step_nm)},
        {"spectrum", "pump_w", Kind::Number, kNonNegative, setter(&C::spectrum, &C::Spectrum::pump_w)},
        {"spectrum", "gen_mismatch_slope", Kind::Number, kAny, setter(&C::spectrum, &C::Spectrum::gen_mismatch_slope)},
        {"spectrum", "gen_length_m", Kind::Number, kPositive, setter(&C::spectrum, &C::Spectrum::gen_length_m)},
        {"spectrum", "det_mismatch_slope", Kind::Number, kAny, setter(&C::spectrum, &C::Spectrum::det_mismatch_slope)},
        {"spectrum", "det_length_m", Kind::Number, kPositive, setter(&C::spectrum, &C::Spectrum::det_length_m)},
        {"spectrum", "det_peak_gain_db", Kind::Number, kNonNegative, setter(&C::spectrum, &C::Spectrum::det_peak_gain_db)},

        {"fibers", "length_m", Kind::NumberList, kNonNegative, setter(&C::fibers, &C::Fibers::length_m)},
        {"fibers", "dispersion_ps_nm_km", Kind::NumberList, kAny, setter(&C::fibers, &C::Fibers::dispersion_ps_nm_km)},
        {"fibers", "reference_wavelength_nm", Kind::NumberList, kPositive, setter(&C::fibers, &C::Fibers::reference_wavelength_nm)},
        {"fibers", "static_phase_rad", Kind::NumberList, kAny, setter(&C::fibers, &C::Fibers::static_phase_rad)},

        {"budget", "losses", Kind::NumberList, kFraction, setter(&C::budget, &C::Budget::losses)},
        {"budget", "names", Kind::StringList, kAny, setter(&C::budget, &C::Budget::names)},
        {"budget", "total_loss", Kind::Number, kFraction, setter(&C::budget, &C::Budget::total_loss)},
        {"budget", "waveguide_loss", Kind::Number, kFraction, setter(&C::budget, &C::Budget::waveguide_loss)},
        {"budget", "measured_db", Kind::Number, kAny, setter(&C::budget, &C::Budget::measured_db)},
        {"budget", "detection_loss", Kind::Number, kFraction, setter(&C::budget, &C::Budget::detection_loss)},
        {"budget", "detection_losses", Kind::NumberList, kFraction, setter(&C::budget, &C::Budget::detection_losses)},
    };
    return specs;
}

bool known_section(std::string_view name) {
    return name == "chain" || name == "sweep" || name == "spectrum" || name == "fibers" || name == "budget";
}

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = s.find(',', start);
        out.push_back(trim(s.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

[[noreturn]] void syntax_error(int line, const std::string& what) {
    fail(ErrorCode::ConfigSyntax, fmt::format("line {}: {}", line, what));
}

double parse_number(std::string_view token, int line) {
    double value = 0.0;
    const char* begin = token.data();
    const char* end = token.data() + token.size();
    if (!token.empty() && *begin == '+') ++begin;
    const auto [ptr, ec] = std::from_chars(begin, end, value, std::chars_format::general);
    if (token.empty() || ec != std::errc() || ptr != end || !std::isfinite(value)) {
        syntax_error(line, fmt::format("'{}' is not a decimal number", token));
    }
    return value;
}

bool valid_identifier(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        const bool ok = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
        if (!ok) return false;
    }
    return true;
}

void check_range(const KeySpec& spec, double x, int line) {
    if (!spec.range.contains(x)) {
        fail(ErrorCode::ConfigRange, fmt::format("line {}: {}.{} = {} is out of range {}{}", line, spec.section,
                                                 spec.key, x, spec.range.describe(),
                                                 spec.range.integer ? " (integer)" : ""));
    }
}

}  // namespace

RunConfig parse_config(std::string_view text) {
    RunConfig config;
    std::string section;
    std::set<std::pair<std::string, std::string>> seen;

    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') syntax_error(line_no, "unterminated section header");
            const auto name = trim(line.substr(1, line.size() - 2));
            if (!valid_identifier(name)) syntax_error(line_no, fmt::format("invalid section name '{}'", name));
            if (!known_section(name)) {
                fail(ErrorCode::ConfigUnknownKey, fmt::format("line {}: unknown section [{}]", line_no, name));
            }
            section = std::string(name);
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string_view::npos) syntax_error(line_no, "expected 'key = value'");
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        if (!valid_identifier(key)) syntax_error(line_no, fmt::format("invalid key '{}'", key));
        if (value.empty()) syntax_error(line_no, fmt::format("key '{}' has no value", key));
        if (section.empty()) syntax_error(line_no, fmt::format("key '{}' appears before any [section]", key));

        const KeySpec* spec = nullptr;
        for (const auto& candidate : key_specs()) {
            if (candidate.section == section && candidate.key == key) {
                spec = &candidate;
                break;
            }
        }
        if (spec == nullptr) {
            fail(ErrorCode::ConfigUnknownKey, fmt::format("line {}: unknown key '{}' in [{}]", line_no, key, section));
        }
        if (!seen.emplace(section, std::string(key)).second) {
            syntax_error(line_no, fmt::format("duplicate key '{}' in [{}]", key, section));
        }

        switch (spec->kind) {
            case Kind::Number: {
                const double x = parse_number(value, line_no);
                check_range(*spec, x, line_no);
                spec->store(config, Value{x});
                break;
            }
            case Kind::NumberList: {
                std::vector<double> xs;
                for (auto token : split_list(value)) {
                    const double x = parse_number(token, line_no);
                    check_range(*spec, x, line_no);
                    xs.push_back(x);
                }
                spec->store(config, Value{std::move(xs)});
                break;
            }
            case Kind::StringList: {
                std::vector<std::string> names;
                for (auto token : split_list(value)) {
                    if (token.empty()) syntax_error(line_no, "empty list entry");
                    names.emplace_back(token);
                }
                spec->store(config, Value{std::move(names)});
                break;
            }
        }
    }
    return config;
}

}  // namespace sqz
