// Copyright 2026 The typlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "typlab/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace typlab {

namespace {

struct Entry {
    TheoremId id;
    std::string_view name;
    std::string_view formula;
};

constexpr std::array<Entry, kTheoremCount> kCatalog{{
    {TheoremId::MC_VARIANCE_IDENTITY, "MC_VARIANCE_IDENTITY",
     "Var_psi(Tr[B psi]) = (<B^2>_mc - <B>_mc^2) / (d_R + 1)"},
    {TheoremId::MC_CONCENTRATION, "MC_CONCENTRATION",
     "P{|Tr[B psi] - <B>_mc| >= eps} <= 2 exp(-C d_R eps^2 / ||B||^2), C = 1/(36 pi^3)"},
    {TheoremId::MC_VARIANCE_CONCENTRATION, "MC_VARIANCE_CONCENTRATION",
     "P{|s2_psi - s2_mc| > ||B||^2 eps} <= min_{0<=del<=eps} 2 exp(-C d_R (eps - del)) + "
     "2 exp(-C d_R del^2) <= 4 exp(-C d_R (1 + 2 eps - sqrt(1 + 4 eps))), C = 1/(36 pi^3)"},
    {TheoremId::COARSE_GRAINED, "COARSE_GRAINED",
     "P{max_A |Tr[A psi] - Tr[A rho_mc]| >= eps} <= 2 m exp(-C d_R eps^2 / (m^2 ||A||^2)), "
     "C = 1/(36 pi^3)"},
    {TheoremId::CANONICAL_REDUCTION, "CANONICAL_REDUCTION",
     "P{D(rho^S, rho^S_mc) >= 2 eps + 2 sqrt(d_S / d_eff(rho^B_mc))} <= 2 exp(-C d_R eps^2), "
     "C = 1/(18 pi^3)"},
    {TheoremId::DEFF_SUBSPACE_MEAN, "DEFF_SUBSPACE_MEAN", "<d_eff(omega)>_psi >= d_R / 2"},
    {TheoremId::DEFF_SUBSPACE_TAIL, "DEFF_SUBSPACE_TAIL",
     "P{d_eff(omega) < d_R / 4} <= 2 exp(-C sqrt(d_R)), C = ln(2)^2 / (72 pi^3)"},
    {TheoremId::DEFF_PRODUCT_MEAN, "DEFF_PRODUCT_MEAN",
     "<d_eff(omega)>_psi >= (d_SR + 1)(d_BR + 1) / 4"},
    {TheoremId::DEFF_MEAN_ENERGY, "DEFF_MEAN_ENERGY",
     "<Tr[omega^2]> ~ (2 E^2 / d^2) sum_k 1/E_k^2; <d_eff> >~ (d/2) E_0^2 / E_mean^2"},
    {TheoremId::EXPECTATION_EQUILIBRATION, "EXPECTATION_EQUILIBRATION",
     "<(Tr[A rho_t] - Tr[A omega])^2>_t <= ||A||^2 / d_eff(omega)"},
    {TheoremId::SUBSYSTEM_EQUILIBRATION, "SUBSYSTEM_EQUILIBRATION",
     "<D(rho^S_t, omega^S)>_t <= (1/2) sqrt(d_S / d_eff(omega^B)) <= (1/2) sqrt(d_S^2 / "
     "d_eff(omega))"},
    {TheoremId::PURITY_EQUILIBRATION, "PURITY_EQUILIBRATION",
     "|<p(rho^S_t)>_t - p(omega^S)| <= Tr[(omega^B)^2] + 2 Tr[omega^2] <= (d_S + 2) / "
     "d_eff(omega)"},
    {TheoremId::ERGODICITY, "ERGODICITY",
     "P{|<Tr[B psi_t]>_t - <B>_mc| >= eps} <= 2 exp(-C d_R eps^2 / ||$[B]||^2), C = 1/(36 pi^3)"},
    {TheoremId::SPEED, "SPEED", "<v_S(t)>_t <= ||H_S (x) I + H_SB|| sqrt(d_S^3 / d_eff(omega))"},
    {TheoremId::PURITY_RATE_AVG, "PURITY_RATE_AVG",
     "<|dp^S/dt|>_t <= 2 ||H_SB|| sqrt(d_S^3 / d_eff(omega))"},
    {TheoremId::PURITY_RATE_INSTANT, "PURITY_RATE_INSTANT",
     "|dp^S/dt| <= 2 p^S sqrt(2 I_SB) ||H_SB||; pure: 4 p^S sqrt(S(rho^S)) ||H_SB||"},
    {TheoremId::COMMUTATOR_LOWER, "COMMUTATOR_LOWER",
     "||[rho, A]||_1 >= 2 max_pairings sum |a_k - a_l| |rho_kl|"},
    {TheoremId::DECOHERENCE, "DECOHERENCE",
     "max_pairings sum |E^S_k - E^S_l| |rho^S_kl| <= ||H_SB|| + (1/2) ||d rho^S/dt||_1"},
    {TheoremId::ISI, "ISI",
     "<D(rho^S_t, sigma^S_t)>_t <= (1/2) sqrt(d_S / d_eff(omega_rho^B)) + (1/2) sqrt(d_S / "
     "d_eff(omega_sigma^B)) + delta"},
    {TheoremId::ISI_LINDEN_DELTA, "ISI_LINDEN_DELTA",
     "<D(omega^S, rho^S_mc)>_psi <= sqrt(d_S delta / (4 d_R)), delta = sum_k <E_k|Pi_R/d_R|E_k> "
     "Tr[(Tr_B E_k)^2]"},
    {TheoremId::ENTANGLED_STATE_TAIL, "ENTANGLED_STATE_TAIL",
     "P{D(rho^S, I/d_S) >= eps} <= 2 (10 d_S / eps)^(2 d_S) exp(-C d_B eps^2), C = 1/(14 ln 2)"},
    {TheoremId::ENTANGLED_EIGS_TAIL, "ENTANGLED_EIGS_TAIL",
     "P{exists k: D(Tr_B E_k, I/d_S) >= eps} <= 2 d (10 d_S / eps)^(2 d_S) exp(-C d_B eps^2), "
     "C = 1/(14 ln 2)"},
    {TheoremId::LEVY, "LEVY",
     "P{|f - <f>| >= eps} <= 2 exp(-C d eps^2 / eta^2), C = 1/(9 pi^3), d = real dimension"},
    {TheoremId::EQ_TIME_HEISENBERG, "EQ_TIME_HEISENBERG", "T_eq >~ 1 / Delta_E"},
    {TheoremId::EQ_TIME_PURITY, "EQ_TIME_PURITY",
     "T(p_eq) >= ln(1/p_eq) / (4 sqrt(ln d_S) ||H_SB||)"},
}};

const Entry &entry(TheoremId id) { return kCatalog[static_cast<std::size_t>(id)]; }

double need(const std::optional<double> &v, TheoremId id, std::string_view field) {
    if (!v) {
        throw MissingContextField(id, field);
    }
    return *v;
}

#define TYPLAB_NEED(field) need(ctx.field, id, #field)

double pi3() { return std::numbers::pi * std::numbers::pi * std::numbers::pi; }

double entangled_tail(TheoremId id, const BoundContext &ctx) {
    const double ds = TYPLAB_NEED(d_s);
    const double db = TYPLAB_NEED(d_b);
    const double eps = TYPLAB_NEED(epsilon);
    return 2.0 * std::pow(10.0 * ds / eps, 2.0 * ds) *
           std::exp(-constants::c_entangled() * db * eps * eps);
}

} // namespace

namespace constants {
double c36() { return 1.0 / (36.0 * pi3()); }
double c18() { return 1.0 / (18.0 * pi3()); }
double c9() { return 1.0 / (9.0 * pi3()); }
double c_deff() { return std::numbers::ln2 * std::numbers::ln2 / (72.0 * pi3()); }
double c_entangled() { return 1.0 / (14.0 * std::numbers::ln2); }
} // namespace constants

const std::array<TheoremId, kTheoremCount> &all_theorems() {
    static const std::array<TheoremId, kTheoremCount> ids = [] {
        std::array<TheoremId, kTheoremCount> out{};
        for (std::size_t i = 0; i < kTheoremCount; ++i) {
            out[i] = kCatalog[i].id;
        }
        return out;
    }();
    return ids;
}

std::string_view to_string(TheoremId id) { return entry(id).name; }

std::optional<TheoremId> parse_theorem_id(std::string_view text) {
    for (const auto &e : kCatalog) {
        if (e.name == text) {
            return e.id;
        }
    }
    return std::nullopt;
}

std::string_view formula(TheoremId id) { return entry(id).formula; }

Sense sense_of(TheoremId id) {
    switch (id) {
    case TheoremId::MC_VARIANCE_IDENTITY:
        return Sense::Equality;
    case TheoremId::DEFF_MEAN_ENERGY:
        return Sense::Approximate;
    case TheoremId::DEFF_SUBSPACE_MEAN:
    case TheoremId::DEFF_PRODUCT_MEAN:
    case TheoremId::COMMUTATOR_LOWER:
    case TheoremId::EQ_TIME_HEISENBERG:
    case TheoremId::EQ_TIME_PURITY:
        return Sense::Lower;
    default:
        return Sense::Upper;
    }
}

std::string_view to_string(Sense s) {
    switch (s) {
    case Sense::Upper:
        return "upper";
    case Sense::Lower:
        return "lower";
    case Sense::Equality:
        return "equality";
    case Sense::Approximate:
        return "approximate";
    }
    return "?";
}

bool is_probability_bound(TheoremId id) {
    switch (id) {
    case TheoremId::MC_CONCENTRATION:
    case TheoremId::MC_VARIANCE_CONCENTRATION:
    case TheoremId::COARSE_GRAINED:
    case TheoremId::CANONICAL_REDUCTION:
    case TheoremId::DEFF_SUBSPACE_TAIL:
    case TheoremId::ERGODICITY:
    case TheoremId::ENTANGLED_STATE_TAIL:
    case TheoremId::ENTANGLED_EIGS_TAIL:
    case TheoremId::LEVY:
        return true;
    default:
        return false;
    }
}

MissingContextField::MissingContextField(TheoremId id, std::string_view field)
    : std::invalid_argument(std::string(to_string(id)) + ": missing context field '" +
                            std::string(field) + "'") {}

double variance_concentration_min_form(double d_r, double eps) {
    const double a = constants::c36() * d_r;
    const auto f = [&](double del) {
        return 2.0 * std::exp(-a * (eps - del)) + 2.0 * std::exp(-a * del * del);
    };
    if (eps <= 0.0) {
        return f(0.0);
    }
    constexpr int kGrid = 4000;
    int best_i = 0;
    double best = f(0.0);
    for (int i = 1; i <= kGrid; ++i) {
        const double v = f(eps * i / kGrid);
        if (v < best) {
            best = v;
            best_i = i;
        }
    }
    // Golden-section refinement inside the neighbouring grid cells.
    double lo = eps * std::max(0, best_i - 1) / kGrid;
    double hi = eps * std::min(kGrid, best_i + 1) / kGrid;
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    for (int it = 0; it < 100; ++it) {
        const double x1 = hi - g * (hi - lo);
        const double x2 = lo + g * (hi - lo);
        (f(x1) < f(x2) ? hi : lo) = (f(x1) < f(x2) ? x2 : x1);
    }
    return std::min(best, f(0.5 * (lo + hi)));
}

double variance_concentration_closed_form(double d_r, double eps) {
    return 4.0 * std::exp(-constants::c36() * d_r * (1.0 + 2.0 * eps - std::sqrt(1.0 + 4.0 * eps)));
}

double evaluate_bound(TheoremId id, const BoundContext &ctx) {
    using std::exp;
    using std::sqrt;
    switch (id) {
    case TheoremId::MC_VARIANCE_IDENTITY: {
        const double b = TYPLAB_NEED(mc_b);
        return (TYPLAB_NEED(mc_b2) - b * b) / (TYPLAB_NEED(d_r) + 1.0);
    }
    case TheoremId::MC_CONCENTRATION: {
        const double eps = TYPLAB_NEED(epsilon);
        const double nb = TYPLAB_NEED(norm_b);
        return 2.0 * exp(-constants::c36() * TYPLAB_NEED(d_r) * eps * eps / (nb * nb));
    }
    case TheoremId::MC_VARIANCE_CONCENTRATION:
        return variance_concentration_min_form(TYPLAB_NEED(d_r), TYPLAB_NEED(epsilon));
    case TheoremId::COARSE_GRAINED: {
        const double eps = TYPLAB_NEED(epsilon);
        const double m = TYPLAB_NEED(m);
        const double na = TYPLAB_NEED(norm_a);
        return 2.0 * m * exp(-constants::c36() * TYPLAB_NEED(d_r) * eps * eps / (m * m * na * na));
    }
    case TheoremId::CANONICAL_REDUCTION: {
        const double eps = TYPLAB_NEED(epsilon);
        return 2.0 * exp(-constants::c18() * TYPLAB_NEED(d_r) * eps * eps);
    }
    case TheoremId::DEFF_SUBSPACE_MEAN:
        return TYPLAB_NEED(d_r) / 2.0;
    case TheoremId::DEFF_SUBSPACE_TAIL:
        return 2.0 * exp(-constants::c_deff() * sqrt(TYPLAB_NEED(d_r)));
    case TheoremId::DEFF_PRODUCT_MEAN:
        return (TYPLAB_NEED(d_sr) + 1.0) * (TYPLAB_NEED(d_br) + 1.0) / 4.0;
    case TheoremId::DEFF_MEAN_ENERGY: {
        if (!ctx.spectrum) {
            throw MissingContextField(id, "spectrum");
        }
        const double e = TYPLAB_NEED(energy);
        const auto &s = *ctx.spectrum;
        const double d = static_cast<double>(s.size());
        double sum = 0.0;
        for (const double ek : s) {
            sum += 1.0 / (ek * ek);
        }
        return 2.0 * e * e / (d * d) * sum;
    }
    case TheoremId::EXPECTATION_EQUILIBRATION: {
        const double na = TYPLAB_NEED(norm_a);
        return na * na / TYPLAB_NEED(deff_omega);
    }
    case TheoremId::SUBSYSTEM_EQUILIBRATION:
        return 0.5 * sqrt(TYPLAB_NEED(d_s) / TYPLAB_NEED(deff_omega_b));
    case TheoremId::PURITY_EQUILIBRATION:
        return TYPLAB_NEED(purity_omega_b) + 2.0 * TYPLAB_NEED(purity_omega);
    case TheoremId::ERGODICITY: {
        const double eps = TYPLAB_NEED(epsilon);
        const double nb = TYPLAB_NEED(norm_dephased_b);
        return 2.0 * exp(-constants::c36() * TYPLAB_NEED(d_r) * eps * eps / (nb * nb));
    }
    case TheoremId::SPEED: {
        const double ds = TYPLAB_NEED(d_s);
        return TYPLAB_NEED(norm_hs_plus_hsb) * sqrt(ds * ds * ds / TYPLAB_NEED(deff_omega));
    }
    case TheoremId::PURITY_RATE_AVG: {
        const double ds = TYPLAB_NEED(d_s);
        return 2.0 * TYPLAB_NEED(norm_hsb) * sqrt(ds * ds * ds / TYPLAB_NEED(deff_omega));
    }
    case TheoremId::PURITY_RATE_INSTANT:
        return 2.0 * TYPLAB_NEED(purity_s) * sqrt(2.0 * std::max(0.0, TYPLAB_NEED(mutual_information))) *
               TYPLAB_NEED(norm_hsb);
    case TheoremId::COMMUTATOR_LOWER: {
        if (!ctx.observable_values) {
            throw MissingContextField(id, "observable_values");
        }
        if (!ctx.state_in_observable_basis) {
            throw MissingContextField(id, "state_in_observable_basis");
        }
        const auto &v = *ctx.observable_values;
        const RealVector a = Eigen::Map<const RealVector>(v.data(), static_cast<Index>(v.size()));
        return 2.0 * max_pairing_offdiagonal_sum(a, *ctx.state_in_observable_basis).value;
    }
    case TheoremId::DECOHERENCE:
        return TYPLAB_NEED(norm_hsb) + TYPLAB_NEED(speed_s);
    case TheoremId::ISI: {
        const double ds = TYPLAB_NEED(d_s);
        return 0.5 * sqrt(ds / TYPLAB_NEED(deff_omega_b)) +
               0.5 * sqrt(ds / TYPLAB_NEED(deff_omega_b_sigma)) + TYPLAB_NEED(delta);
    }
    case TheoremId::ISI_LINDEN_DELTA:
        return sqrt(TYPLAB_NEED(d_s) * TYPLAB_NEED(delta) / (4.0 * TYPLAB_NEED(d_r)));
    case TheoremId::ENTANGLED_STATE_TAIL:
        return entangled_tail(id, ctx);
    case TheoremId::ENTANGLED_EIGS_TAIL:
        return TYPLAB_NEED(d) * entangled_tail(id, ctx);
    case TheoremId::LEVY: {
        const double eps = TYPLAB_NEED(epsilon);
        const double eta = TYPLAB_NEED(eta);
        return 2.0 * exp(-constants::c9() * TYPLAB_NEED(d) * eps * eps / (eta * eta));
    }
    case TheoremId::EQ_TIME_HEISENBERG:
        return 1.0 / TYPLAB_NEED(delta_e);
    case TheoremId::EQ_TIME_PURITY:
        return std::log(1.0 / TYPLAB_NEED(p_eq)) /
               (4.0 * sqrt(std::log(TYPLAB_NEED(d_s))) * TYPLAB_NEED(norm_hsb));
    }
    throw std::invalid_argument("evaluate_bound: unknown theorem id");
}

std::optional<double> evaluate_secondary(TheoremId id, const BoundContext &ctx) {
    switch (id) {
    case TheoremId::MC_VARIANCE_CONCENTRATION:
        return variance_concentration_closed_form(TYPLAB_NEED(d_r), TYPLAB_NEED(epsilon));
    case TheoremId::CANONICAL_REDUCTION:
        return 2.0 * TYPLAB_NEED(epsilon) + 2.0 * std::sqrt(TYPLAB_NEED(d_s) / TYPLAB_NEED(deff_omega_b));
    case TheoremId::DEFF_MEAN_ENERGY: {
        const double e0 = TYPLAB_NEED(e0);
        const double em = TYPLAB_NEED(e_mean);
        return TYPLAB_NEED(d) / 2.0 * e0 * e0 / (em * em);
    }
    case TheoremId::SUBSYSTEM_EQUILIBRATION: {
        const double ds = TYPLAB_NEED(d_s);
        return 0.5 * std::sqrt(ds * ds / TYPLAB_NEED(deff_omega));
    }
    case TheoremId::PURITY_EQUILIBRATION:
        return (TYPLAB_NEED(d_s) + 2.0) / TYPLAB_NEED(deff_omega);
    case TheoremId::PURITY_RATE_INSTANT:
        return 4.0 * TYPLAB_NEED(purity_s) * std::sqrt(std::max(0.0, TYPLAB_NEED(entropy_s))) *
               TYPLAB_NEED(norm_hsb);
    default:
        return std::nullopt;
    }
}

double purity_rate_operator_norm_form(const BoundContext &ctx) {
    const TheoremId id = TheoremId::PURITY_RATE_INSTANT;
    return 2.0 * TYPLAB_NEED(norm_rho_s) *
           std::sqrt(2.0 * std::max(0.0, TYPLAB_NEED(mutual_information))) * TYPLAB_NEED(norm_hsb);
}

#undef TYPLAB_NEED

bool within(Sense sense, Statistic lhs, double rhs, double rel_tol) {
    const double allowance = 3.0 * lhs.std_error + kExactAllowance * std::max(1.0, std::abs(rhs));
    switch (sense) {
    case Sense::Upper:
        return lhs.value <= rhs + allowance;
    case Sense::Lower:
        return lhs.value >= rhs - allowance;
    case Sense::Equality:
        return std::abs(lhs.value - rhs) <= allowance;
    case Sense::Approximate:
        return std::abs(lhs.value - rhs) <= allowance + rel_tol * std::abs(rhs);
    }
    return false;
}

BoundReport compare(TheoremId id, Sense sense, Statistic lhs, double rhs, double rel_tol) {
    BoundReport r;
    r.theorem = id;
    r.sense = sense;
    r.lhs = lhs.value;
    r.std_error = lhs.std_error;
    r.rhs = rhs;
    r.vacuous = is_probability_bound(id) && rhs >= 1.0;
    r.satisfied = within(sense, lhs, rhs, rel_tol);
    switch (sense) {
    case Sense::Upper:
        r.margin = rhs - lhs.value;
        break;
    case Sense::Lower:
        r.margin = lhs.value - rhs;
        break;
    case Sense::Equality:
        r.margin = -std::abs(lhs.value - rhs);
        break;
    case Sense::Approximate:
        r.margin = rel_tol * std::abs(rhs) - std::abs(lhs.value - rhs);
        break;
    }
    return r;
}

BoundReport check_bound(TheoremId id, Statistic lhs, const BoundContext &ctx) {
    const double rel = ctx.relative_tolerance.value_or(0.1);
    return compare(id, sense_of(id), lhs, evaluate_bound(id, ctx), rel);
}

} // namespace typlab
