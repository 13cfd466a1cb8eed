#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hfree/pattern.hpp"
#include "hfree/process.hpp"

namespace hfree {

struct SweepRecord {
    std::string pattern;
    std::uint32_t n = 0;
    std::uint64_t seed = 0;
    std::uint64_t accepted_edges = 0;
    std::uint64_t max_codegree = 0;
    std::uint64_t runtime_ms = 0;
    auto operator<=>(const SweepRecord&) const = default;
};

struct SweepFailure {
    std::uint32_t n = 0;
    std::uint64_t seed = 0;
    std::string message;
};

struct SweepOptions {
    std::vector<std::uint32_t> n_list;
    std::size_t trials = 1;
    std::uint64_t base_seed = 0;
    double p_stop = 1.0;
    unsigned threads = 1;
    /// Wall-clock times make the CSV non-reproducible; off means runtime_ms = 0.
    bool record_runtime = false;
    std::uint64_t memory_budget = kDefaultMemoryBudget;
    EmbedderOptions embedder;
    /// Called (serialized) as each run finishes, in completion order.
    std::function<void(const SweepRecord&)> on_record;
};

struct SweepResult {
    std::vector<SweepRecord> records;  ///< sorted by (n, seed)
    std::vector<SweepFailure> failures;
};

/// trials x |n_list| independent runs; trial t uses derive_seed(base_seed, t).
/// Throws MemoryBudgetExceeded up front if any n fails the guard.
SweepResult sweep(const Pattern& pattern, const SweepOptions& options);

/// Header: pattern,n,seed,accepted_edges,max_codegree,runtime_ms
void write_sweep_csv(std::ostream& os, const std::vector<SweepRecord>& records);
std::vector<SweepRecord> read_sweep_csv(std::istream& is);

enum class Quantity { edges, codegree };
enum class Aggregate { mean, median };

std::string to_string(Quantity q);
Quantity parse_quantity(const std::string& s);

struct FitResult {
    Quantity quantity = Quantity::edges;
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    std::vector<std::uint32_t> n_values;
    std::vector<std::size_t> trials_per_n;
    std::vector<double> per_n_value;   ///< aggregated quantity per n
    std::vector<double> per_n_stddev;  ///< sample standard deviation per n
    std::optional<Rational> predicted_slope;
    double deviation = 0.0;            ///< slope - predicted (0 without a prediction)
};

/// Least squares of ln(aggregate quantity) on ln n. Needs >= 3 distinct n
/// and positive aggregates; throws std::invalid_argument otherwise.
/// The (log n)^beta factors of the bounds are not modeled.
FitResult fit(const std::vector<SweepRecord>& records, Quantity quantity,
              std::optional<Rational> predicted = std::nullopt, Aggregate aggregate = Aggregate::mean);

/// ln y = a ln n + b ln ln n + c. Exploration only.
struct TwoTermFit {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double r_squared = 0.0;
};
TwoTermFit fit_two_term(const std::vector<SweepRecord>& records, Quantity quantity,
                        Aggregate aggregate = Aggregate::mean);

std::string fit_record(const FitResult& f);
/// Log-log scatter of the per-n aggregates with the fitted line.
void write_fit_svg(std::ostream& os, const FitResult& f);

}  // namespace hfree
