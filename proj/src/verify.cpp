#include "qsample/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <json.hpp>

#include "qsample/bounds.hpp"
#include "qsample/quantum.hpp"
#include "qsample/sampling.hpp"

namespace qsample {

namespace {

using nlohmann::json;

Rng instance_rng(std::uint64_t seed, std::uint32_t suite_tag, std::size_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), suite_tag,
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    return Rng(seq);
}

std::size_t uniform_index(Rng& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

json complex_json(Complex z) {
    return json::array({z.real(), z.imag()});
}

json pm_json(const ProjectiveMeasurement2& m) {
    return json::array({json::array({complex_json(m.vec(0)[0]), complex_json(m.vec(0)[1])}),
                        json::array({complex_json(m.vec(1)[0]), complex_json(m.vec(1)[1])})});
}

// Mostly Haar-random, with the coinciding (c = 1) and mutually unbiased
// (c = 1/2) extremes mixed in.
ProjectiveMeasurement2 second_measurement(const ProjectiveMeasurement2& first, Rng& rng) {
    const std::size_t kind = uniform_index(rng, 0, 7);
    if (kind == 0) return first;
    if (kind == 1) {
        const Unitary2 u = first.as_unitary();
        const Unitary2 h = hadamard_unitary();
        return ProjectiveMeasurement2::from_unitary({u[0] * h[0] + u[1] * h[2], u[0] * h[1] + u[1] * h[3],
                                                     u[2] * h[0] + u[3] * h[2], u[2] * h[1] + u[3] * h[3]});
    }
    return ProjectiveMeasurement2::from_unitary(random_unitary(rng));
}

double draw_delta(Rng& rng) {
    if (uniform_index(rng, 0, 1) == 0) return 0.05 * static_cast<double>(uniform_index(rng, 0, 12));
    return std::uniform_real_distribution<double>(0.0, 0.6)(rng);
}

struct RandomSuperposition {
    std::vector<Word> words;
    std::vector<Complex> coeffs;
};

RandomSuperposition random_superposition(std::size_t qubits, Rng& rng) {
    const std::size_t space = std::size_t{1} << qubits;
    const std::size_t count = uniform_index(rng, 1, space);
    const SubsetIndex chosen = sample_subset(space, count, rng);
    RandomSuperposition out;
    std::normal_distribution<double> gauss;
    double norm = 0.0;
    for (std::size_t idx : chosen.indices()) {
        std::vector<Symbol> bits(qubits);
        for (std::size_t i = 0; i < qubits; ++i) bits[i] = static_cast<Symbol>((idx >> (qubits - 1 - i)) & 1u);
        out.words.emplace_back(std::move(bits));
        out.coeffs.emplace_back(gauss(rng), gauss(rng));
        norm += std::norm(out.coeffs.back());
    }
    for (auto& c : out.coeffs) c /= std::sqrt(norm);
    return out;
}

void record(SuiteReport& report, double slack, bool violated, const json& instance) {
    ++report.instances;
    report.worst_slack = std::min(report.worst_slack, slack);
    if (!violated) return;
    ++report.violations;
    if (!report.first_violation) report.first_violation = instance.dump();
}

SuiteReport start(const char* name) {
    SuiteReport r;
    r.name = name;
    r.worst_slack = std::numeric_limits<double>::infinity();
    return r;
}

template <typename Check>
SuiteReport run_superposition_family(const char* name, std::uint32_t tag, std::size_t max_qubits, const SuiteConfig& cfg,
                              Check&& check) {
    SuiteReport report = start(name);
    for (std::size_t i = 0; i < cfg.trials; ++i) {
        Rng rng = instance_rng(cfg.seed, tag, i);
        const std::size_t qubits = uniform_index(rng, 1, max_qubits);
        const auto sup = random_superposition(qubits, rng);
        const auto basis = ProjectiveMeasurement2::from_unitary(random_unitary(rng));
        const auto n = second_measurement(basis, rng);
        const InequalitySides sides = check(sup.coeffs, sup.words, basis, n);
        const double slack = sides.lhs - sides.rhs;
        bool violated = slack < -kPropertyTolerance;
        if (sup.words.size() == 1) violated = violated || std::abs(slack) > kPropertyTolerance;
        json words = json::array();
        for (const auto& w : sup.words) words.push_back(w.to_string());
        json coeffs = json::array();
        for (const auto& c : sup.coeffs) coeffs.push_back(complex_json(c));
        record(report, slack, violated,
               {{"suite", name}, {"seed", cfg.seed}, {"index", i}, {"words", words}, {"coeffs", coeffs},
                {"basis", pm_json(basis)}, {"N", pm_json(n)}, {"lhs", sides.lhs}, {"rhs", sides.rhs}});
    }
    return report;
}

}  // namespace

SuiteReport run_superposition_suite(const SuiteConfig& cfg) {
    return run_superposition_family("superposition", 1, 6, cfg, [](auto&&... args) { return lemma1_check(args...); });
}

SuiteReport run_superposition_branch_suite(const SuiteConfig& cfg) {
    return run_superposition_family("superposition-branch", 2, 4, cfg,
                             [](auto&&... args) { return lemma1_check_orthogonal_branches(args...); });
}

SuiteReport run_ideal_state_suite(const SuiteConfig& cfg) {
    SuiteReport report = start("ideal-state");
    for (std::size_t i = 0; i < cfg.trials; ++i) {
        Rng rng = instance_rng(cfg.seed, 3, i);
        const std::size_t s = uniform_index(rng, 2, 10);
        const std::size_t m = uniform_index(rng, 1, s / 2);
        const std::size_t n = s - m;
        const SubsetIndex tau = sample_subset(s, m, rng);
        const auto a = static_cast<Symbol>(uniform_index(rng, 0, 1));
        const double delta = draw_delta(rng);
        const Unitary2 u = random_unitary(rng);
        const auto basis = ProjectiveMeasurement2::from_unitary(u);
        const auto second = second_measurement(basis, rng);

        const PureState psi = random_span_B_state(s, tau, a, delta, u, rng);
        const MeasurementRecord rec = measure_subset(psi, tau, basis, rng);
        const double w = relative_hamming_weight(rec.outcome, a);

        // Residual support must stay within delta of the observed weight.
        bool support_ok = true;
        const Amplitudes coords = expand_in_basis(rec.post_state, u);
        for (std::size_t idx = 0; idx < coords.size(); ++idx) {
            if (std::abs(coords[idx]) <= 1e-9) continue;
            std::size_t differing = 0;
            for (std::size_t b = 0; b < n; ++b) differing += ((idx >> b) & 1u) != a;
            const double wi = static_cast<double>(differing) / static_cast<double>(n);
            if (std::abs(w - wi) > delta + kWeightTolerance) support_ok = false;
        }

        const double c = overlap_c(basis, second);
        const Bits measured = min_entropy_of_measurement(rec.post_state, second);
        const Bits bound = ideal_state_bound(n, c, w, delta) + cfg.bound_offset;
        const double slack = measured - bound;
        record(report, slack, slack < -kPropertyTolerance || !support_ok,
               {{"suite", "ideal-state"}, {"seed", cfg.seed}, {"index", i}, {"s", s}, {"tau", tau.indices()},
                {"a", a}, {"delta", delta}, {"U", json::array({complex_json(u[0]), complex_json(u[1]),
                                                              complex_json(u[2]), complex_json(u[3])})},
                {"N", pm_json(second)}, {"outcome", rec.outcome.to_string()}, {"c", c},
                {"min_entropy", measured}, {"bound", bound}, {"support_ok", support_ok}});
    }
    return report;
}

SuiteReport run_maassen_uffink_suite(const SuiteConfig& cfg) {
    SuiteReport report = start("uncertainty");
    for (std::size_t i = 0; i < cfg.trials; ++i) {
        Rng rng = instance_rng(cfg.seed, 4, i);
        const DensityOperator rho = random_qubit_density(rng);
        const auto m = ProjectiveMeasurement2::from_unitary(random_unitary(rng));
        const auto n = second_measurement(m, rng);
        const InequalitySides sides = maassen_uffink_check(rho, m, n);
        const double slack = sides.lhs - sides.rhs;
        json rho_json = json::array();
        for (const auto& z : rho.matrix().data()) rho_json.push_back(complex_json(z));
        record(report, slack, slack < -kPropertyTolerance,
               {{"suite", "uncertainty"}, {"seed", cfg.seed}, {"index", i}, {"rho", rho_json}, {"M", pm_json(m)},
                {"N", pm_json(n)}, {"lhs", sides.lhs}, {"rhs", sides.rhs}});
    }
    return report;
}

SuiteReport run_sampling_suite(const SuiteConfig& cfg) {
    SuiteReport report = start("sampling-bound");
    if (cfg.trials == 0) return report;
    const std::size_t max_n = std::min(cfg.sampling_max_length, kExactMaxLength);
    for (std::size_t total = 2; total <= max_n; ++total)
        for (std::size_t k = 1; 2 * k <= total; ++k)
            for (int step = 1; step <= 10; ++step) {
                const double delta = 0.05 * step;
                const double exact = error_prob_exact(total, k, delta, 2, 0);
                const double bound = error_prob_bound(total, k, delta);
                record(report, bound - exact, exact > bound,
                       {{"suite", "sampling-bound"}, {"N", total}, {"k", k}, {"delta", delta}, {"exact", exact},
                        {"bound", bound}});
            }
    return report;
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"superposition", "superposition-branch", "ideal-state",
                                                "uncertainty", "sampling-bound"};
    return names;
}

SuiteReport run_suite(const std::string& name, const SuiteConfig& cfg) {
    if (name == "superposition") return run_superposition_suite(cfg);
    if (name == "superposition-branch") return run_superposition_branch_suite(cfg);
    if (name == "ideal-state") return run_ideal_state_suite(cfg);
    if (name == "uncertainty") return run_maassen_uffink_suite(cfg);
    if (name == "sampling-bound") return run_sampling_suite(cfg);
    throw std::invalid_argument("unknown suite: " + name);
}

}  // namespace qsample
