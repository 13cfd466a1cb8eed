#include "hfree/harness.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "hfree/random.hpp"

namespace hfree {

SweepResult sweep(const Pattern& pattern, const SweepOptions& opt) {
    for (std::uint32_t n : opt.n_list) check_memory_budget(n, pattern.k(), opt.memory_budget);

    struct Job {
        std::uint32_t n;
        std::uint64_t seed;
    };
    std::vector<Job> jobs;
    for (std::uint32_t n : opt.n_list)
        for (std::size_t t = 0; t < opt.trials; ++t) jobs.push_back({n, derive_seed(opt.base_seed, t)});

    const Embedder embedder(pattern, opt.embedder);
    std::vector<std::optional<SweepRecord>> done(jobs.size());
    std::vector<std::optional<SweepFailure>> failed(jobs.size());
    std::atomic<std::size_t> next{0};
    std::mutex emit;

    auto worker = [&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) {
            const Job& job = jobs[i];
            try {
                const auto start = std::chrono::steady_clock::now();
                const BirthOrder order = make_birth_order(job.seed, job.n, pattern.k(), opt.memory_budget);
                const ProcessResult res = run_process(order, embedder, opt.p_stop);
                const auto elapsed = std::chrono::steady_clock::now() - start;
                SweepRecord rec{pattern.name(), job.n, job.seed, res.accepted, res.max_codegree, 0};
                if (opt.record_runtime) {
                    rec.runtime_ms = static_cast<std::uint64_t>(
                        std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count());
                }
                done[i] = rec;
                if (opt.on_record) {
                    std::lock_guard lock(emit);
                    opt.on_record(rec);
                }
            } catch (const std::exception& e) {
                failed[i] = SweepFailure{job.n, job.seed, e.what()};
            }
        }
    };
    const unsigned threads = std::max(1U, std::min<unsigned>(opt.threads, static_cast<unsigned>(jobs.size())));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }

    SweepResult out;
    for (auto& r : done)
        if (r) out.records.push_back(std::move(*r));
    for (auto& f : failed)
        if (f) out.failures.push_back(std::move(*f));
    std::sort(out.records.begin(), out.records.end(),
              [](const SweepRecord& a, const SweepRecord& b) { return std::tie(a.n, a.seed) < std::tie(b.n, b.seed); });
    return out;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRecord>& records) {
    os << "pattern,n,seed,accepted_edges,max_codegree,runtime_ms\n";
    for (const auto& r : records) {
        os << r.pattern << ',' << r.n << ',' << r.seed << ',' << r.accepted_edges << ',' << r.max_codegree << ','
           << r.runtime_ms << '\n';
    }
}

std::vector<SweepRecord> read_sweep_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw std::invalid_argument("sweep csv: empty input");
    if (line != "pattern,n,seed,accepted_edges,max_codegree,runtime_ms") {
        throw std::invalid_argument("sweep csv: unexpected header");
    }
    std::vector<SweepRecord> out;
    std::size_t lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::vector<std::string> cols;
        std::stringstream ss(line);
        for (std::string c; std::getline(ss, c, ',');) cols.push_back(c);
        if (cols.size() != 6) throw std::invalid_argument("sweep csv line " + std::to_string(lineno) + ": need 6 columns");
        try {
            out.push_back(SweepRecord{cols[0], static_cast<std::uint32_t>(std::stoul(cols[1])), std::stoull(cols[2]),
                                      std::stoull(cols[3]), std::stoull(cols[4]), std::stoull(cols[5])});
        } catch (const std::logic_error&) {
            throw std::invalid_argument("sweep csv line " + std::to_string(lineno) + ": bad number");
        }
    }
    return out;
}

std::string to_string(Quantity q) { return q == Quantity::edges ? "edges" : "codegree"; }

Quantity parse_quantity(const std::string& s) {
    if (s == "edges") return Quantity::edges;
    if (s == "codegree") return Quantity::codegree;
    throw std::invalid_argument("quantity must be 'edges' or 'codegree'");
}

namespace {

struct Grouped {
    std::vector<std::uint32_t> n;
    std::vector<std::size_t> count;
    std::vector<double> value;
    std::vector<double> stddev;
};

Grouped group(const std::vector<SweepRecord>& records, Quantity q, Aggregate agg) {
    std::map<std::uint32_t, std::vector<double>> by_n;
    for (const auto& r : records) {
        by_n[r.n].push_back(static_cast<double>(q == Quantity::edges ? r.accepted_edges : r.max_codegree));
    }
    Grouped g;
    for (auto& [n, vals] : by_n) {
        // sorted so the floating-point sums do not depend on record order
        std::sort(vals.begin(), vals.end());
        double sum = 0.0;
        for (double x : vals) sum += x;
        const double mean = sum / static_cast<double>(vals.size());
        double ss = 0.0;
        for (double x : vals) ss += (x - mean) * (x - mean);
        double center = mean;
        if (agg == Aggregate::median) {
            const std::size_t m = vals.size() / 2;
            center = vals.size() % 2 ? vals[m] : 0.5 * (vals[m - 1] + vals[m]);
        }
        g.n.push_back(n);
        g.count.push_back(vals.size());
        g.value.push_back(center);
        g.stddev.push_back(vals.size() > 1 ? std::sqrt(ss / static_cast<double>(vals.size() - 1)) : 0.0);
    }
    if (g.n.size() < 3) throw std::invalid_argument("fit needs at least 3 distinct n values");
    for (double v : g.value)
        if (!(v > 0.0)) throw std::invalid_argument("fit needs positive aggregated values");
    return g;
}

double r_squared(const Eigen::VectorXd& y, const Eigen::VectorXd& fitted) {
    const double mean = y.mean();
    const double ss_tot = (y.array() - mean).square().sum();
    const double ss_res = (y - fitted).squaredNorm();
    if (ss_tot == 0.0) return 1.0;
    return std::clamp(1.0 - ss_res / ss_tot, 0.0, 1.0);
}

}  // namespace

FitResult fit(const std::vector<SweepRecord>& records, Quantity quantity, std::optional<Rational> predicted,
              Aggregate aggregate) {
    const Grouped g = group(records, quantity, aggregate);
    const auto m = static_cast<Eigen::Index>(g.n.size());
    Eigen::MatrixXd design(m, 2);
    Eigen::VectorXd y(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        design(i, 0) = std::log(static_cast<double>(g.n[static_cast<std::size_t>(i)]));
        design(i, 1) = 1.0;
        y(i) = std::log(g.value[static_cast<std::size_t>(i)]);
    }
    const Eigen::VectorXd beta = design.householderQr().solve(y);

    FitResult f;
    f.quantity = quantity;
    f.slope = beta(0);
    f.intercept = beta(1);
    f.r_squared = r_squared(y, design * beta);
    f.n_values = g.n;
    f.trials_per_n = g.count;
    f.per_n_value = g.value;
    f.per_n_stddev = g.stddev;
    f.predicted_slope = predicted;
    if (predicted) {
        f.deviation = f.slope - boost::rational_cast<double>(*predicted);
    }
    return f;
}

TwoTermFit fit_two_term(const std::vector<SweepRecord>& records, Quantity quantity, Aggregate aggregate) {
    const Grouped g = group(records, quantity, aggregate);
    const auto m = static_cast<Eigen::Index>(g.n.size());
    Eigen::MatrixXd design(m, 3);
    Eigen::VectorXd y(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        const double ln_n = std::log(static_cast<double>(g.n[static_cast<std::size_t>(i)]));
        design(i, 0) = ln_n;
        design(i, 1) = std::log(ln_n);
        design(i, 2) = 1.0;
        y(i) = std::log(g.value[static_cast<std::size_t>(i)]);
    }
    const Eigen::VectorXd beta = design.householderQr().solve(y);
    return {beta(0), beta(1), beta(2), r_squared(y, design * beta)};
}

std::string fit_record(const FitResult& f) {
    std::ostringstream os;
    os << std::setprecision(6) << std::fixed;
    os << "quantity=" << to_string(f.quantity) << " slope=" << f.slope << " intercept=" << f.intercept
       << " r_squared=" << f.r_squared;
    if (f.predicted_slope) {
        os << " predicted=" << to_string(*f.predicted_slope) << " deviation=" << f.deviation;
    } else {
        os << " predicted=none";
    }
    os << " n_values=";
    for (std::size_t i = 0; i < f.n_values.size(); ++i) os << (i ? ";" : "") << f.n_values[i];
    os << " trials=";
    for (std::size_t i = 0; i < f.trials_per_n.size(); ++i) os << (i ? ";" : "") << f.trials_per_n[i];
    os << " stddev=";
    for (std::size_t i = 0; i < f.per_n_stddev.size(); ++i) os << (i ? ";" : "") << f.per_n_stddev[i];
    return os.str();
}

void write_fit_svg(std::ostream& os, const FitResult& f) {
    constexpr double width = 480, height = 360, pad = 48;
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < f.n_values.size(); ++i) {
        xs.push_back(std::log(static_cast<double>(f.n_values[i])));
        ys.push_back(std::log(f.per_n_value[i]));
    }
    const auto [xmin, xmax] = std::minmax_element(xs.begin(), xs.end());
    double ylo = *std::min_element(ys.begin(), ys.end());
    double yhi = *std::max_element(ys.begin(), ys.end());
    ylo = std::min(ylo, f.slope * *xmin + f.intercept);
    yhi = std::max(yhi, f.slope * *xmax + f.intercept);
    const double xspan = std::max(*xmax - *xmin, 1e-9), yspan = std::max(yhi - ylo, 1e-9);
    auto px = [&](double x) { return pad + (x - *xmin) / xspan * (width - 2 * pad); };
    auto py = [&](double y) { return height - pad - (y - ylo) / yspan * (height - 2 * pad); };

    os << std::setprecision(2) << std::fixed;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n"
       << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
       << "<line x1=\"" << pad << "\" y1=\"" << height - pad << "\" x2=\"" << width - pad << "\" y2=\"" << height - pad
       << "\" stroke=\"black\"/>\n"
       << "<line x1=\"" << pad << "\" y1=\"" << pad << "\" x2=\"" << pad << "\" y2=\"" << height - pad
       << "\" stroke=\"black\"/>\n"
       << "<line x1=\"" << px(*xmin) << "\" y1=\"" << py(f.slope * *xmin + f.intercept) << "\" x2=\"" << px(*xmax)
       << "\" y2=\"" << py(f.slope * *xmax + f.intercept) << "\" stroke=\"steelblue\" stroke-width=\"2\"/>\n";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        os << "<circle cx=\"" << px(xs[i]) << "\" cy=\"" << py(ys[i]) << "\" r=\"4\" fill=\"firebrick\"/>\n";
    }
    os << "<text x=\"" << width / 2 << "\" y=\"" << height - 12 << "\" text-anchor=\"middle\" font-size=\"12\">ln n</text>\n"
       << "<text x=\"14\" y=\"" << height / 2 << "\" font-size=\"12\" transform=\"rotate(-90 14 " << height / 2
       << ")\" text-anchor=\"middle\">ln " << to_string(f.quantity) << "</text>\n"
       << "<text x=\"" << pad << "\" y=\"24\" font-size=\"12\">slope " << std::setprecision(3) << f.slope;
    if (f.predicted_slope) os << " (predicted " << to_string(*f.predicted_slope) << ")";
    os << "</text>\n</svg>\n";
}

}  // namespace hfree
