#include "doctest.h"

#include <cmath>
#include <numbers>

#include "oracle.hpp"
#include "ptcav/sweep.hpp"

using namespace ptcav;

namespace {

constexpr double pi = std::numbers::pi;
constexpr double bracket = 1e-3;

ModelParams params(std::size_t n, GainLossLayout layout, double phi = 0.0, double kappa = 0.0) {
    ModelParams p;
    p.n_sites = n;
    p.layout = layout;
    p.phi = phi;
    p.kappa = kappa;
    return p;
}

const ModelParams end50 = params(50, GainLossLayout::EndPair);
const ModelParams inner50 = params(50, GainLossLayout::InnerPair);
const ModelParams end51 = params(51, GainLossLayout::EndPair);

ClassCounts counts(const ModelParams& p) { return solve_spectrum(p).spectrum.counts; }

bool broken(const ModelParams& p) {
    const auto c = counts(p);
    return c.imaginary + c.complex > 0;
}

bool collapsed(const ModelParams& p) {
    const auto c = counts(p);
    return c.complex == 0 && c.imaginary > 0;
}

std::size_t row_index(const SweepTable& t, double value) {
    for (std::size_t i = 0; i < t.grid.size(); ++i)
        if (t.grid[i] == value) return i;
    FAIL("grid value missing");
    return 0;
}

void check_same(const SweepTable& a, const SweepTable& b) {
    REQUIRE(a.rows.size() == b.rows.size());
    CHECK(a.grid == b.grid);
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        CHECK(a.rows[i].param == b.rows[i].param);
        CHECK(a.rows[i].result.spectrum.values == b.rows[i].result.spectrum.values);
        CHECK(a.rows[i].result.spectrum.classes == b.rows[i].result.spectrum.classes);
        CHECK(a.rows[i].result.max_residual == b.rows[i].result.max_residual);
    }
}

bool same_threshold(const Threshold& a, const Threshold& b) {
    if (a.status != b.status) return false;
    if (std::isnan(a.value)) return std::isnan(b.value);
    return a.value == b.value && a.bracket_lo == b.bracket_lo && a.bracket_hi == b.bracket_hi;
}

}  // namespace

TEST_SUITE("sweep_phi") {
    TEST_CASE("end-pair rows at kappa = 0.1") {
        const std::vector<double> grid = {0.0, pi / 2, pi};
        const SweepTable t = sweep_phi(end50.with_kappa(0.1), grid);
        REQUIRE(t.rows.size() == 3);
        CHECK(t.all_converged());
        for (const auto& r : t.rows) CHECK(r.result.spectrum.dim() == 50);

        const Spectrum& at0 = t.rows[row_index(t, 0.0)].result.spectrum;
        CHECK(at0.counts == ClassCounts{48, 2, 0, 0});
        const PairingReport pr = pairing_structure(at0);
        CHECK(pr.imaginary_pairs == 1);
        CHECK(pr.conjugate_pairs == 1);

        const Spectrum& at_pi = t.rows[row_index(t, pi)].result.spectrum;
        CHECK(at_pi.counts == ClassCounts{50, 0, 0, 0});
        CHECK(at_pi.phase == Phase::Unbroken);
    }

    TEST_CASE("end-pair at kappa = 3.3, phi = pi: two imaginary pairs") {
        const std::vector<double> grid = {pi};
        const SweepTable t = sweep_phi(end50.with_kappa(3.3), grid);
        const Spectrum& s = t.rows[0].result.spectrum;
        CHECK(s.counts == ClassCounts{46, 4, 0, 0});
        CHECK(pairing_structure(s).imaginary_pairs == 2);
    }

    TEST_CASE("grid checks") {
        const std::vector<double> empty;
        const std::vector<double> unsorted = {1.0, 0.5};
        const std::vector<double> repeated = {1.0, 1.0};
        const std::vector<double> outside = {0.0, 7.0};
        CHECK_THROWS_AS(sweep_phi(end50, empty), std::invalid_argument);
        CHECK_THROWS_AS(sweep_phi(end50, unsorted), std::invalid_argument);
        CHECK_THROWS_AS(sweep_phi(end50, repeated), std::invalid_argument);
        CHECK_THROWS_AS(sweep_phi(end50, outside), ModelError);
        const std::vector<double> negative = {-0.5, 1.0};
        CHECK_THROWS_AS(sweep_kappa(end50, negative), ModelError);
    }

    TEST_CASE("unconverged rows are flagged, not dropped") {
        SweepOptions opts;
        opts.solve.qr.cap_per_site = 0;
        const std::vector<double> grid = {0.5, 1.0};
        const SweepTable t = sweep_phi(end50.with_kappa(0.3), grid, opts);
        CHECK(t.rows.size() == 2);
        CHECK_FALSE(t.all_converged());
        CHECK_FALSE(t.rows[0].result.converged);
    }

    TEST_CASE("reflection symmetry phi <-> 2 pi - phi") {
        for (const auto layout : {GainLossLayout::EndPair, GainLossLayout::InnerPair, GainLossLayout::Staggered,
                                  GainLossLayout::Hermitian}) {
            std::vector<double> grid;
            for (int i = 0; i <= 20; ++i) grid.push_back(2 * pi * i / 20.0);
            const SweepTable t = sweep_phi(params(50, layout, 0.0, 0.9), grid);
            for (std::size_t i = 0; i <= 20; ++i) {
                const auto& a = t.rows[i].result.spectrum.values;
                const auto& b = t.rows[20 - i].result.spectrum.values;
                CAPTURE(i);
                CHECK(oracle::matched_distance(a, b) <= 1e-10);
            }
        }
    }
}

TEST_SUITE("sweep_kappa") {
    TEST_CASE("nontrivial regime breaks at the first positive kappa") {
        const std::vector<double> grid = {0.0, 0.01, 0.2, 0.5};
        const SweepTable t = sweep_kappa(end50, grid);
        CHECK(t.axis == SweepAxis::Kappa);
        CHECK(t.rows[0].result.spectrum.phase == Phase::Unbroken);
        for (std::size_t i = 1; i < grid.size(); ++i) CHECK(t.rows[i].result.spectrum.phase == Phase::Broken);
    }

    TEST_CASE("boundary point stays unbroken below kappa = 1") {
        std::vector<double> grid;
        for (int i = 0; i <= 30; ++i) grid.push_back(0.99 * i / 30.0);
        const SweepTable t = sweep_kappa(end50.with_phi(pi / 2), grid);
        for (const auto& r : t.rows) CHECK(r.result.spectrum.phase == Phase::Unbroken);
    }

    TEST_CASE("staggered at kappa = 2.5 is fully imaginary") {
        const std::vector<double> grid = {2.5};
        const SweepTable t = sweep_kappa(params(50, GainLossLayout::Staggered, pi), grid);
        const auto& c = t.rows[0].result.spectrum.counts;
        CHECK(c.imaginary + c.zero == 50);
    }

    TEST_CASE("bracketing the first transition at phi = pi") {
        const std::vector<double> grid = {0.4, 0.6};
        const SweepTable t = sweep_kappa(end50.with_phi(pi), grid);
        CHECK(t.rows[0].result.spectrum.counts.real == 50);
        CHECK(t.rows[1].result.spectrum.counts.complex == 4);
    }

    TEST_CASE("staggered uniform chain: imaginary count grows to N") {
        std::vector<double> grid;
        for (int i = 0; i <= 60; ++i) grid.push_back(2.0 * i / 60.0);
        grid.push_back(2.0 + bracket);
        grid.push_back(2.1);
        const SweepTable t = sweep_kappa(params(50, GainLossLayout::Staggered, pi / 2), grid);
        std::size_t prev = 0;
        for (const auto& r : t.rows) {
            const std::size_t im = r.result.spectrum.counts.imaginary;
            CAPTURE(r.param);
            CHECK(im >= prev);
            prev = im;
        }
        CHECK(t.rows.back().result.spectrum.counts.imaginary == 50);
    }
}

TEST_SUITE("thresholds") {
    TEST_CASE("end-pair first transition") {
        const Threshold at_pi = first_transition(end50, pi, 5.0, bracket);
        CHECK(at_pi.status == ThresholdStatus::Ok);
        CHECK(std::abs(at_pi.value - 0.502) <= 0.01);
        CHECK(at_pi.bracket_hi - at_pi.bracket_lo <= bracket);

        for (const double phi : {pi / 2, 3 * pi / 2}) {
            const Threshold t = first_transition(end50, phi, 5.0, bracket);
            CHECK(t.status == ThresholdStatus::Ok);
            CHECK(std::abs(t.value - 1.0) <= 0.01);
        }

        const Threshold nontrivial = first_transition(end50, 0.3, 5.0, bracket);
        CHECK(nontrivial.status == ThresholdStatus::Zero);
        CHECK(nontrivial.value == 0.0);
    }

    TEST_CASE("inner-pair first transition") {
        const Threshold t = first_transition(inner50, 0.0, 5.0, bracket);
        CHECK(t.status == ThresholdStatus::Ok);
        CHECK(std::abs(t.value - 0.474) <= 0.01);
    }

    TEST_CASE("second transitions") {
        CHECK(std::abs(second_transition(end50, pi, 5.0, bracket).value - 2.91) <= 0.02);
        CHECK(std::abs(second_transition(inner50, 0.0, 5.0, bracket).value - 3.08) <= 0.02);
        CHECK(std::abs(second_transition(inner50, pi, 5.0, bracket).value - 3.08) <= 0.02);

        const Threshold none = second_transition(end50, 0.0, 5.0, bracket);
        CHECK(none.status == ThresholdStatus::NoneFound);
        CHECK(std::isnan(none.value));
    }

    TEST_CASE("none found below kappa_max") {
        const Threshold t = first_transition(end50, pi, 0.3, bracket);
        CHECK(t.status == ThresholdStatus::NoneFound);
        CHECK(to_string(t.status) == "none");
    }

    TEST_CASE("argument checks") {
        CHECK_THROWS_AS(first_transition(end50, pi, 5.0, 0.0), std::invalid_argument);
        CHECK_THROWS_AS(first_transition(end50, pi, 0.0, bracket), std::invalid_argument);
        CHECK_THROWS_AS(second_transition(end50, pi, 5.0, -1.0), std::invalid_argument);
        TransitionOptions opts;
        opts.scan_points = 1;
        CHECK_THROWS_AS(first_transition(end50, pi, 5.0, bracket, opts), std::invalid_argument);
    }

    TEST_CASE("solver failure surfaces as SolverError") {
        TransitionOptions opts;
        opts.solve.qr.cap_per_site = 0;
        CHECK_THROWS_AS(first_transition(end50, pi, 5.0, bracket, opts), SolverError);
    }

    TEST_CASE("bracket validity") {
        struct Case {
            ModelParams base;
            double phi;
            bool second;
        };
        const Case cases[] = {{end50, pi, false},      {end50, 2.2, false}, {end50, pi / 2, false},
                              {inner50, 0.0, false},   {end50, pi, true},   {inner50, pi, true},
                              {inner50, 0.0, true}};
        for (const auto& c : cases) {
            const Threshold t = c.second ? second_transition(c.base, c.phi, 5.0, bracket)
                                         : first_transition(c.base, c.phi, 5.0, bracket);
            REQUIRE(t.status == ThresholdStatus::Ok);
            auto pred = [&](double kappa) {
                const ModelParams p = c.base.with_phi(c.phi).with_kappa(kappa);
                return c.second ? collapsed(p) : broken(p);
            };
            CAPTURE(c.phi);
            CAPTURE(c.second);
            CHECK_FALSE(pred(t.value - bracket));
            CHECK(pred(t.value + bracket));
        }
    }

    TEST_CASE("doubling the scan density moves no threshold by more than the bracket") {
        TransitionOptions fine;
        fine.scan_points = 128;
        for (const double phi : {pi, 2.0, pi / 2}) {
            const Threshold a = first_transition(end50, phi, 5.0, bracket);
            const Threshold b = first_transition(end50, phi, 5.0, bracket, fine);
            CHECK(std::abs(a.value - b.value) <= bracket);
        }
        const Threshold a = second_transition(inner50, 0.0, 5.0, bracket);
        const Threshold b = second_transition(inner50, 0.0, 5.0, bracket, fine);
        CHECK(std::abs(a.value - b.value) <= bracket);
    }

    TEST_CASE("large kappa: the smallest imaginary pair shrinks") {
        auto smallest_imaginary = [](double kappa) {
            const Spectrum s = solve_spectrum(end50.with_phi(pi).with_kappa(kappa)).spectrum;
            double m = INFINITY;
            for (std::size_t i = 0; i < s.dim(); ++i)
                if (s.classes[i] == EigClass::PurelyImaginary) m = std::min(m, std::abs(s.values[i].imag()));
            return m;
        };
        const double at5 = smallest_imaginary(5.0);
        const double at20 = smallest_imaginary(20.0);
        REQUIRE(std::isfinite(at5));
        CHECK(at20 < at5);
    }
}

TEST_SUITE("critical_curve") {
    TEST_CASE("end-pair first curve over [pi/2, 3 pi/2]") {
        std::vector<double> grid;
        for (int i = 0; i <= 8; ++i) grid.push_back(pi / 2 + pi * i / 8.0);
        const CriticalCurve c = critical_curve(end50, grid, TransitionKind::First, 5.0, bracket);
        REQUIRE(c.kappa_values.size() == 9);
        CHECK(c.bracket_tol == bracket);
        double lowest = INFINITY;
        std::size_t arg = 0;
        for (std::size_t i = 0; i < 9; ++i) {
            CHECK(c.kappa_values[i].status == ThresholdStatus::Ok);
            if (c.kappa_values[i].value < lowest) {
                lowest = c.kappa_values[i].value;
                arg = i;
            }
        }
        CHECK(arg == 4);
        CHECK(std::abs(lowest - 0.502) <= 0.01);
        CHECK(std::abs(c.kappa_values.front().value - 1.0) <= 0.01);
        CHECK(std::abs(c.kappa_values.back().value - 1.0) <= 0.01);

        for (std::size_t i = 0; i < 9; ++i)
            CHECK(std::abs(c.kappa_values[i].value - c.kappa_values[8 - i].value) <= 2 * bracket);
    }

    TEST_CASE("nontrivial angle gives the zero marker") {
        const std::vector<double> grid = {0.3};
        const CriticalCurve c = critical_curve(end50, grid, TransitionKind::First, 5.0, bracket);
        CHECK(c.kappa_values[0].status == ThresholdStatus::Zero);
    }

    TEST_CASE("inner-pair second curve at 0 and pi") {
        const std::vector<double> grid = {0.0, pi};
        const CriticalCurve c = critical_curve(inner50, grid, TransitionKind::Second, 5.0, bracket);
        for (const auto& t : c.kappa_values) CHECK(std::abs(t.value - 3.08) <= 0.02);
    }

    TEST_CASE("reflection symmetry of a full first curve") {
        std::vector<double> grid;
        for (int i = 0; i <= 12; ++i) grid.push_back(2 * pi * i / 12.0);
        const CriticalCurve c = critical_curve(inner50, grid, TransitionKind::First, 5.0, bracket);
        for (std::size_t i = 0; i <= 12; ++i) {
            const auto& a = c.kappa_values[i];
            const auto& b = c.kappa_values[12 - i];
            CHECK(a.status == b.status);
            if (a.status == ThresholdStatus::Ok) CHECK(std::abs(a.value - b.value) <= 2 * bracket);
        }
    }
}

TEST_SUITE("parallel kernels match the serial reference") {
    TEST_CASE("sweeps are bitwise identical for every thread count") {
        std::vector<double> phis;
        for (int i = 0; i <= 24; ++i) phis.push_back(2 * pi * i / 24.0);
        std::vector<double> kappas;
        for (int i = 0; i <= 24; ++i) kappas.push_back(3.0 * i / 24.0);
        const ModelParams base = end50.with_kappa(0.8);

        const SweepTable ref_phi = reference::sweep_phi(base, phis);
        const SweepTable ref_kappa = reference::sweep_kappa(base.with_phi(2.5), kappas);
        for (const int threads : {1, 2, 4, 8}) {
            SweepOptions opts;
            opts.threads = threads;
            check_same(sweep_phi(base, phis, opts), ref_phi);
            check_same(sweep_kappa(base.with_phi(2.5), kappas, opts), ref_kappa);
        }
    }

    TEST_CASE("critical curves are identical for every thread count") {
        std::vector<double> phis;
        for (int i = 0; i <= 6; ++i) phis.push_back(pi / 2 + pi * i / 6.0);
        const CriticalCurve ref = reference::critical_curve(end50, phis, TransitionKind::First, 5.0, bracket);
        for (const int threads : {1, 3, 8}) {
            const CriticalCurve par = critical_curve(end50, phis, TransitionKind::First, 5.0, bracket, {}, threads);
            for (std::size_t i = 0; i < phis.size(); ++i)
                CHECK(same_threshold(par.kappa_values[i], ref.kappa_values[i]));
        }
    }
}

TEST_SUITE("odd_chain_events") {
    TEST_CASE("boundary pair at phi = pi/2") {
        const auto events = odd_chain_events(end51, pi / 2, 5.0, bracket);
        REQUIRE(events.size() == 1);
        CHECK(events[0].kind == OddEventKind::BoundaryPair);
        CHECK(std::abs(events[0].threshold.value - 1.01) <= 0.02);
        CHECK(to_string(events[0].kind) == "odd-boundary-pair");
    }

    TEST_CASE("split event away from the boundary") {
        const auto events = odd_chain_events(end51, pi, 5.0, bracket);
        REQUIRE(events.size() == 1);
        CHECK(events[0].kind == OddEventKind::Split);
        const Threshold& t = events[0].threshold;
        REQUIRE(t.status == ThresholdStatus::Ok);
        CHECK(counts(end51.with_phi(pi).with_kappa(t.bracket_lo)).imaginary == 1);
        CHECK(counts(end51.with_phi(pi).with_kappa(t.bracket_hi)).imaginary >= 3);
    }

    TEST_CASE("boundary point at small kappa: real spectrum with one zero mode") {
        const Spectrum s = solve_spectrum(end51.with_phi(pi / 2).with_kappa(0.1)).spectrum;
        CHECK(s.counts == ClassCounts{50, 0, 0, 1});
        CHECK(s.phase == Phase::Unbroken);
        CHECK(count_zero_modes(s) == 1);
    }

    TEST_CASE("nontrivial baseline: one imaginary value, the rest weakly complex or real") {
        const Spectrum s = solve_spectrum(end51.with_kappa(0.1)).spectrum;
        CHECK(s.counts.imaginary == 1);
        CHECK(s.counts.zero == 0);
        CHECK(s.counts.real + s.counts.complex == 50);
    }

    TEST_CASE("even chains are rejected") {
        CHECK_THROWS_AS(odd_chain_events(end50, pi, 5.0, bracket), std::invalid_argument);
    }

    TEST_CASE("boundary detection") {
        CHECK(is_boundary_angle(pi / 2));
        CHECK(is_boundary_angle(3 * pi / 2));
        CHECK_FALSE(is_boundary_angle(pi / 2 + 1e-6));
        CHECK_FALSE(is_boundary_angle(0.0));
    }
}
