#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace equicolor {

enum class ErrorKind {
    InvalidArgument,
    MissingEmbedding,
    NotOuterplanar,
    NotMaximal,
    NotAForest,
    HypothesisViolated,
    InternalAssertionFailed,
    BudgetExceeded,
    TooLarge,
    TooSmall,
    NoConfigAvoidingE,
    Unsolved,
    WitnessInvalid,
    ParseError,
};

inline const char* to_string(ErrorKind k) {
    switch (k) {
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::MissingEmbedding: return "MissingEmbedding";
        case ErrorKind::NotOuterplanar: return "NotOuterplanar";
        case ErrorKind::NotMaximal: return "NotMaximal";
        case ErrorKind::NotAForest: return "NotAForest";
        case ErrorKind::HypothesisViolated: return "HypothesisViolated";
        case ErrorKind::InternalAssertionFailed: return "InternalAssertionFailed";
        case ErrorKind::BudgetExceeded: return "BudgetExceeded";
        case ErrorKind::TooLarge: return "TooLarge";
        case ErrorKind::TooSmall: return "TooSmall";
        case ErrorKind::NoConfigAvoidingE: return "NoConfigAvoidingE";
        case ErrorKind::Unsolved: return "Unsolved";
        case ErrorKind::WitnessInvalid: return "WitnessInvalid";
        case ErrorKind::ParseError: return "ParseError";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what, int vertex = -1, long value = -1)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what),
          kind_(kind), vertex_(vertex), value_(value) {}

    ErrorKind kind() const { return kind_; }
    // For HypothesisViolated: the offending vertex and its alpha_v.
    int vertex() const { return vertex_; }
    long value() const { return value_; }

private:
    ErrorKind kind_;
    int vertex_;
    long value_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what, int vertex = -1, long value = -1) {
    throw Error(kind, what, vertex, value);
}

inline void ensure(bool cond, const std::string& what) {
    if (!cond) fail(ErrorKind::InternalAssertionFailed, what);
}

// Per-thread counters for fallbacks taken and in-loop checks performed.
struct Telemetry {
    std::uint64_t forest_exhaustive_fallbacks = 0;
    std::uint64_t forest_rebalances = 0;
    std::uint64_t original_graph_set_searches = 0;
    std::uint64_t pipeline_fallbacks = 0;
    std::uint64_t saturation_extra_bad_edges = 0;
    std::uint64_t extend_six_steps = 0;
    std::uint64_t extend_jumps_to_six = 0;
    std::uint64_t invariant_checks = 0;
    std::uint64_t invariant_violations = 0;

    void reset() { *this = Telemetry{}; }
    bool clean() const {
        // Rebalancing is the forest colourer's own second stage, so it is
        // reported but does not make a run unclean.
        return forest_exhaustive_fallbacks == 0 &&
               original_graph_set_searches == 0 && pipeline_fallbacks == 0 &&
               saturation_extra_bad_edges == 0;
    }
};

inline Telemetry& telemetry() {
    thread_local Telemetry t;
    return t;
}

}  // namespace equicolor
