#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace microtter {

/// Options understood by the saturation loop, populated from set(...) and
/// assign(...) directives. max_mem is modeled as a retained-clause cap.
struct ProverOptions {
    bool knuth_bendix = false;
    bool ur_res = false;
    bool unit_deletion = false;
    bool para_from_units_only = false;
    bool para_into_units_only = false;
    bool bird_print = false;

    static constexpr std::uint32_t unlimited = std::numeric_limits<std::uint32_t>::max();

    std::uint32_t max_weight = unlimited;
    std::uint32_t pick_given_ratio = unlimited; // "unlimited" = never pick by age
    std::uint32_t max_retained = 200000;
    std::uint32_t demod_step_cap = 10000;
    std::optional<std::uint32_t> max_seconds;
    std::optional<std::uint64_t> max_generated;

    /// Symbol names from a precedence(...) directive, greatest first.
    std::vector<std::string> precedence_override;

    /// Reason the options are unusable, or nullopt when fine.
    std::optional<std::string> invalid_reason() const {
        if (max_weight < 1) return "max_weight must be at least 1";
        if (pick_given_ratio < 1) return "pick_given_ratio must be at least 1";
        if (max_retained < 1) return "max_mem must be at least 1";
        return std::nullopt;
    }
};

} // namespace microtter
