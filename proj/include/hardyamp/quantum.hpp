#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "box.hpp"
#include "gadget.hpp"

namespace hardyamp {

using Complex = std::complex<double>;

/// Largest Hardy-event probability a quantum strategy can reach in the
/// binary two-setting scenario: (5√5 − 11)/2.
inline const double kIdealHardyProbability = (5.0 * std::sqrt(5.0) - 11.0) / 2.0;

/// State angle attaining kIdealHardyProbability: arccos(√((√5 − 1)/2)).
inline const double kIdealTheta = std::acos(std::sqrt((std::sqrt(5.0) - 1.0) / 2.0));

struct StateVector {
    int dim = 0;
    std::vector<Complex> amplitudes;

    void require() const {
        if (dim <= 0 || amplitudes.size() != static_cast<std::size_t>(dim))
            throw StructuralError("StateVector: amplitude count does not match dim");
        double n2 = 0;
        for (const Complex& a : amplitudes) n2 += std::norm(a);
        if (std::abs(n2 - 1.0) > 1e-12)
            throw DomainError("StateVector: squared norm deviates from 1 by more than 1e-12");
    }
};

struct MeasurementBasis {
    int dim = 0;
    std::vector<std::vector<Complex>> vectors;  ///< one orthonormal vector per outcome

    void require() const {
        if (dim <= 0 || vectors.size() != static_cast<std::size_t>(dim))
            throw StructuralError("MeasurementBasis: need exactly dim outcome vectors");
        for (const auto& v : vectors)
            if (v.size() != static_cast<std::size_t>(dim))
                throw StructuralError("MeasurementBasis: vector dimension mismatch");
        for (std::size_t i = 0; i < vectors.size(); ++i)
            for (std::size_t j = i; j < vectors.size(); ++j) {
                Complex inner = 0;
                for (int k = 0; k < dim; ++k)
                    inner += std::conj(vectors[i][static_cast<std::size_t>(k)]) *
                             vectors[j][static_cast<std::size_t>(k)];
                const double target = i == j ? 1.0 : 0.0;
                if (std::abs(inner - target) > 1e-10)
                    throw DomainError("MeasurementBasis: vectors are not orthonormal");
            }
        // completeness: sum of projectors equals the identity
        for (int r = 0; r < dim; ++r)
            for (int c = 0; c < dim; ++c) {
                Complex s = 0;
                for (const auto& v : vectors)
                    s += v[static_cast<std::size_t>(r)] * std::conj(v[static_cast<std::size_t>(c)]);
                const double target = r == c ? 1.0 : 0.0;
                if (std::abs(s - target) > 1e-10)
                    throw DomainError("MeasurementBasis: projectors do not resolve the identity");
            }
    }
};

/// Pure two-qubit state mixed with isotropic noise of weight eta.
struct NoisyState {
    double theta = 0.0;
    double eta = 0.0;

    void require() const {
        if (!(theta > 0.0 && theta < std::acos(-1.0) / 2.0))
            throw DomainError("NoisyState: theta must lie strictly between 0 and pi/2");
        if (!(eta >= 0.0 && eta < 1.0)) throw DomainError("NoisyState: eta outside [0,1)");
    }
};

/// Two-qubit state (cosθ(|01⟩+|10⟩) + sinθ|11⟩)/√(1+cos²θ). At either
/// endpoint of (0, π/2) the construction degenerates, so those are rejected.
inline StateVector hardy_state(double theta) {
    if (!(theta > 0.0 && theta < std::acos(-1.0) / 2.0))
        throw DomainError("hardy_state: theta must lie strictly between 0 and pi/2");
    const double c = std::cos(theta), s = std::sin(theta);
    const double n = std::sqrt(1.0 + c * c);
    StateVector psi;
    psi.dim = 4;
    psi.amplitudes = {Complex(0.0), Complex(c / n), Complex(c / n), Complex(s / n)};
    return psi;
}

/// Local measurement for one setting: setting 0 rotates by the state angle so
/// that the zero constraints hold, setting 1 is the computational basis.
inline MeasurementBasis hardy_basis(double theta, int setting) {
    if (!(theta > 0.0 && theta < std::acos(-1.0) / 2.0))
        throw DomainError("hardy_basis: theta must lie strictly between 0 and pi/2");
    const double c = std::cos(theta), s = std::sin(theta);
    MeasurementBasis m;
    m.dim = 2;
    if (setting == 0)
        m.vectors = {{Complex(s), Complex(-c)}, {Complex(c), Complex(s)}};
    else if (setting == 1)
        m.vectors = {{Complex(1.0), Complex(0.0)}, {Complex(0.0), Complex(1.0)}};
    else
        throw DomainError("hardy_basis: setting must be 0 or 1");
    return m;
}

/// Born-rule box P(a,b|x,y) = |⟨A_x^a ⊗ B_y^b | ψ⟩|² for a bipartite pure
/// state and per-setting projective bases.
inline ConditionalBox projective_box(const StateVector& psi,
                                     const std::vector<MeasurementBasis>& alice,
                                     const std::vector<MeasurementBasis>& bob) {
    psi.require();
    if (alice.empty() || bob.empty()) throw StructuralError("projective_box: no measurement settings");
    const int dA = alice.front().dim, dB = bob.front().dim;
    for (const auto& m : alice) {
        m.require();
        if (m.dim != dA) throw StructuralError("projective_box: mixed Alice dimensions");
    }
    for (const auto& m : bob) {
        m.require();
        if (m.dim != dB) throw StructuralError("projective_box: mixed Bob dimensions");
    }
    if (psi.dim != dA * dB)
        throw StructuralError("projective_box: state dimension is not the product of local dimensions");
    const BellScenario sc{static_cast<int>(alice.size()), static_cast<int>(bob.size()), dA, dB};
    ConditionalBox box(sc);
    for (int x = 0; x < sc.nX; ++x)
        for (int y = 0; y < sc.nY; ++y)
            for (int a = 0; a < dA; ++a)
                for (int b = 0; b < dB; ++b) {
                    Complex amp = 0;
                    for (int i = 0; i < dA; ++i)
                        for (int j = 0; j < dB; ++j)
                            amp += std::conj(alice[static_cast<std::size_t>(x)].vectors[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)]) *
                                   std::conj(bob[static_cast<std::size_t>(y)].vectors[static_cast<std::size_t>(b)][static_cast<std::size_t>(j)]) *
                                   psi.amplitudes[static_cast<std::size_t>(i * dB + j)];
                    box.at(x, y, a, b) = std::norm(amp);
                }
    return box;
}

/// The binary two-setting Hardy box at state angle theta, mixed with
/// isotropic noise: (1−η)·P_pure + η/4 entrywise.
inline ConditionalBox hardy_box(double theta, double etaNoise) {
    NoisyState{theta, etaNoise}.require();
    const std::vector<MeasurementBasis> bases{hardy_basis(theta, 0), hardy_basis(theta, 1)};
    ConditionalBox box = projective_box(hardy_state(theta), bases, bases);
    if (etaNoise > 0.0) {
        const BellScenario& sc = box.scenario();
        for (int x = 0; x < sc.nX; ++x)
            for (int y = 0; y < sc.nY; ++y)
                for (int a = 0; a < sc.nA; ++a)
                    for (int b = 0; b < sc.nB; ++b)
                        box.at(x, y, a, b) = (1.0 - etaNoise) * box.at(x, y, a, b) + etaNoise / 4.0;
    }
    return box;
}

/// Box of the maximally-entangled-state strategy for a compiled game:
/// P(a,b|x,y) = (1/d)|⟨û_{(x,a)}|û_{(y,b)}⟩|² with real unit vectors, so all
/// orthogonal cross pairs get probability exactly 0.
inline ConditionalBox mes_box(const GadgetGame& game) {
    if (game.cliques.empty()) throw StructuralError("mes_box: game has no inputs");
    for (std::size_t ci = 0; ci < game.cliques.size(); ++ci) {
        const auto& c = game.cliques[ci];
        if (static_cast<int>(c.size()) != game.dim)
            throw DomainError("mes_box: input " + std::to_string(ci) + " is not a complete basis");
        for (std::size_t i = 0; i < c.size(); ++i)
            for (std::size_t j = i + 1; j < c.size(); ++j)
                if (!orthogonal(game.vectors[static_cast<std::size_t>(c[i])],
                                game.vectors[static_cast<std::size_t>(c[j])]))
                    throw DomainError("mes_box: input " + std::to_string(ci) +
                                      " is not an orthogonal basis");
    }
    const BellScenario sc = game.scenario();
    ConditionalBox box(sc);
    const double d = static_cast<double>(game.dim);
    for (int x = 0; x < sc.nX; ++x)
        for (int y = 0; y < sc.nY; ++y)
            for (int a = 0; a < sc.nA; ++a)
                for (int b = 0; b < sc.nB; ++b) {
                    const RealVec& u = game.vectors[static_cast<std::size_t>(
                        game.cliques[static_cast<std::size_t>(x)][static_cast<std::size_t>(a)])];
                    const RealVec& v = game.vectors[static_cast<std::size_t>(
                        game.cliques[static_cast<std::size_t>(y)][static_cast<std::size_t>(b)])];
                    const double uv = dot(u, v);
                    box.at(x, y, a, b) = uv * uv / (d * dot(u, u) * dot(v, v));
                }
    return box;
}

/// Largest isotropic-noise weight at which the worst-case weighted gap of the
/// ideal box stays positive under input bias eps.
inline double noise_tolerance(double eps) {
    if (!(eps >= 0.0 && eps < 0.5)) throw DomainError("noise_tolerance: eps outside [0, 1/2)");
    const double r = std::pow((0.5 + eps) / (0.5 - eps), 4.0);
    return kIdealHardyProbability /
           (0.75 * r - (0.25 - kIdealHardyProbability));
}

}  // namespace hardyamp
