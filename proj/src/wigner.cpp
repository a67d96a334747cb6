// Copyright 2026 The qwigner Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qwigner/wigner.hpp"

#include <algorithm>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <cstdint>

#include "qwigner/error.hpp"

namespace qwigner {

namespace {

double pow_d(const Modulus &mod, int k) { return std::pow(static_cast<double>(mod.d()), k); }

void check_table(const Modulus &mod, std::size_t size) {
    if (size != mod.num_points())
        throw DimensionError("table has " + std::to_string(size) + " entries, expected d^(2n) = " +
                             std::to_string(mod.num_points()));
}

// sum_v omega^{[u,v]} Tr(T_v m) for every u.
std::vector<Complex> character_coefficients(const Modulus &mod, const DenseOperator &m) {
    std::vector<Complex> traces(mod.num_points());
    for (std::size_t v = 0; v < mod.num_points(); ++v) traces[v] = trace_with(weyl(PhasePoint::from_index(mod, v)), m);
    return symplectic_transform(mod, traces, TransformDirection::Forward);
}

// d^{-n} Tr(A_u m) for every u, by building each A_u.
std::vector<double> definitional_traces(const Modulus &mod, const DenseOperator &m, std::size_t size_cap) {
    std::vector<double> out(mod.num_points());
    const DenseOperator mt = m.transpose();
    for (std::size_t u = 0; u < mod.num_points(); ++u) {
        const auto a = phase_point_operator(PhasePoint::from_index(mod, u), size_cap);
        out[u] = a.matrix.cwiseProduct(mt).sum().real();
    }
    return out;
}

void validate_effect(const Modulus &mod, const DenseOperator &e, double tol) {
    const auto dim = static_cast<Eigen::Index>(mod.hilbert_dim());
    if (e.rows() != dim || e.cols() != dim)
        throw EffectValidationError("effect must be " + std::to_string(dim) + "x" + std::to_string(dim));
    if ((e - e.adjoint()).cwiseAbs().maxCoeff() > tol) throw EffectValidationError("effect is not Hermitian");
    const DenseOperator sym = 0.5 * (e + e.adjoint());
    Eigen::SelfAdjointEigenSolver<DenseOperator> es(sym, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -tol || es.eigenvalues().maxCoeff() > 1.0 + tol)
        throw EffectValidationError("effect eigenvalues must lie in [0, 1]");
}

}  // namespace

WignerFunction::WignerFunction(const Modulus &mod, std::vector<double> values, WignerKind kind)
    : mod_(mod), values_(std::move(values)), kind_(kind) {
    check_table(mod_, values_.size());
}

PhasePointOperator phase_point_operator(const PhasePoint &u, std::size_t size_cap) {
    const Modulus &mod = u.modulus();
    check_size_cap(mod, size_cap);
    const auto dim = static_cast<Eigen::Index>(mod.hilbert_dim());
    RootsOfUnity omega(mod.d());
    const double scale = 1.0 / pow_d(mod, mod.n());
    DenseOperator a = DenseOperator::Zero(dim, dim);
    for (std::size_t idx = 0; idx < mod.num_points(); ++idx) {
        const PhasePoint v = PhasePoint::from_index(mod, idx);
        const WeylOperator t = weyl(v);
        const WeylOperator term(t.phase() + symplectic_form(u, v), v);
        for_each_entry(term, [&](std::size_t row, std::size_t col, Residue e) {
            a(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) += scale * omega[e];
        });
    }
    return {u, std::move(a)};
}

WignerFunction wigner_of_state(const Modulus &mod, const DenseOperator &rho, WignerMethod method, double tol,
                               std::size_t size_cap) {
    check_size_cap(mod, size_cap);
    validate_density(mod, rho, tol);
    std::vector<double> values(mod.num_points());
    if (method == WignerMethod::Transform) {
        const auto g = character_coefficients(mod, rho);
        const double scale = 1.0 / static_cast<double>(mod.num_points());
        for (std::size_t u = 0; u < values.size(); ++u) values[u] = scale * g[u].real();
    } else {
        values = definitional_traces(mod, rho, size_cap);
        const double scale = 1.0 / pow_d(mod, mod.n());
        for (auto &v : values) v *= scale;
    }
    return WignerFunction(mod, std::move(values), WignerKind::State);
}

WignerFunction wigner_of_effect(const Modulus &mod, const DenseOperator &effect, WignerMethod method, double tol,
                                std::size_t size_cap) {
    check_size_cap(mod, size_cap);
    validate_effect(mod, effect, tol);
    std::vector<double> values(mod.num_points());
    if (method == WignerMethod::Transform) {
        const auto g = character_coefficients(mod, effect);
        const double scale = 1.0 / pow_d(mod, mod.n());
        for (std::size_t u = 0; u < values.size(); ++u) values[u] = scale * g[u].real();
    } else {
        values = definitional_traces(mod, effect, size_cap);
    }
    return WignerFunction(mod, std::move(values), WignerKind::Effect);
}

DenseOperator reconstruct_state(const WignerFunction &w, std::size_t size_cap) {
    const Modulus &mod = w.modulus();
    check_size_cap(mod, size_cap);
    const auto dim = static_cast<Eigen::Index>(mod.hilbert_dim());
    DenseOperator rho = DenseOperator::Zero(dim, dim);
    for (std::size_t u = 0; u < mod.num_points(); ++u)
        rho += w.values()[u] * phase_point_operator(PhasePoint::from_index(mod, u), size_cap).matrix;
    return rho;
}

double born_rule(const WignerFunction &effect, const WignerFunction &state) {
    if (!(effect.modulus() == state.modulus())) throw DimensionError("Wigner functions live on different phase spaces");
    if (effect.kind() != WignerKind::Effect || state.kind() != WignerKind::State)
        throw InvalidArgumentError("born_rule expects an effect and a state Wigner function");
    double acc = 0.0;
    for (std::size_t u = 0; u < state.values().size(); ++u) acc += effect.values()[u] * state.values()[u];
    return acc;
}

Complex expectation(const PhasePoint &a, const WignerFunction &state) {
    const Modulus &mod = state.modulus();
    if (!(a.modulus() == mod)) throw DimensionError("point and Wigner function live on different phase spaces");
    if (state.kind() != WignerKind::State) throw InvalidArgumentError("expectation expects a state Wigner function");
    RootsOfUnity omega(mod.d());
    Complex acc = 0.0;
    for (std::size_t u = 0; u < mod.num_points(); ++u)
        acc += state.values()[u] * omega[symplectic_form(a, PhasePoint::from_index(mod, u))];
    return acc;
}

NegativityReport negativity_report(const WignerFunction &w, double eps) {
    if (w.kind() != WignerKind::State) throw InvalidArgumentError("negativity report expects a state Wigner function");
    const Modulus &mod = w.modulus();
    const auto &values = w.values();
    std::size_t argmin = 0;
    double sum_abs = 0.0;
    std::vector<PhasePoint> negatives;
    for (std::size_t u = 0; u < values.size(); ++u) {
        if (values[u] < values[argmin]) argmin = u;
        sum_abs += std::abs(values[u]);
        if (values[u] < -eps) negatives.push_back(PhasePoint::from_index(mod, u));
    }
    return NegativityReport{
        .min_value = values[argmin],
        .min_point = PhasePoint::from_index(mod, argmin),
        .negative_points = std::move(negatives),
        .sum_negativity = sum_abs,
        .mana = std::log(sum_abs),
        .non_negative = values[argmin] >= -eps,
    };
}

std::vector<Complex> symplectic_transform(const Modulus &mod, std::span<const Complex> f,
                                          TransformDirection direction) {
    check_table(mod, f.size());
    const int d = mod.d();
    const int axes = 2 * mod.n();
    const std::size_t size = f.size();
    RootsOfUnity omega(d);

    // Axis k is coordinate k of the canonical digit string (u_Z then u_X).
    // The kernel prod_i omega^{u_Z[i] v_X[i] - u_X[i] v_Z[i]} splits into one
    // 1-D transform per input axis: X axes with omega^{+yt}, Z axes with
    // omega^{-yt}. The transformed Z axis carries u_X and vice versa, so the
    // halves are swapped at the end.
    std::vector<Complex> work(f.begin(), f.end());
    std::vector<Complex> line(static_cast<std::size_t>(d));
    std::size_t stride = size;
    for (int k = 0; k < axes; ++k) {
        stride /= static_cast<std::size_t>(d);
        const bool z_axis = k < mod.n();
        const std::size_t block = stride * static_cast<std::size_t>(d);
        for (std::size_t outer = 0; outer < size; outer += block) {
            for (std::size_t inner = 0; inner < stride; ++inner) {
                const std::size_t base = outer + inner;
                for (int t = 0; t < d; ++t) line[static_cast<std::size_t>(t)] = work[base + static_cast<std::size_t>(t) * stride];
                for (int y = 0; y < d; ++y) {
                    Complex acc = 0.0;
                    for (int t = 0; t < d; ++t) {
                        const int e = (y * t) % d;
                        acc += omega[z_axis ? (d - e) % d : e] * line[static_cast<std::size_t>(t)];
                    }
                    work[base + static_cast<std::size_t>(y) * stride] = acc;
                }
            }
        }
    }

    // Swap the (u_Z, u_X) halves: out index of (a, b) reads work at (b, a).
    const std::size_t half = mod.hilbert_dim();
    std::vector<Complex> out(size);
    for (std::size_t hi = 0; hi < half; ++hi)
        for (std::size_t lo = 0; lo < half; ++lo) out[hi * half + lo] = work[lo * half + hi];

    // omega^{-[u,v]} summed over u equals omega^{[v,u]}, the forward kernel,
    // so the inverse is the forward transform rescaled.
    if (direction == TransformDirection::Inverse) {
        const double scale = 1.0 / static_cast<double>(size);
        for (auto &c : out) c *= scale;
    }
    return out;
}

std::vector<Complex> symplectic_transform_naive(const Modulus &mod, std::span<const Complex> f,
                                                TransformDirection direction) {
    check_table(mod, f.size());
    if (f.size() > kNaiveTransformLimit)
        throw CapacityError("naive transform is limited to " + std::to_string(kNaiveTransformLimit) + " points");
    const int d = mod.d();
    const int n = mod.n();
    const std::size_t size = f.size();
    RootsOfUnity omega(d);

    const std::size_t width = static_cast<std::size_t>(2 * n);
    std::vector<int> coords(size * width);
    for (std::size_t i = 0; i < size; ++i) {
        const auto p = PhasePoint::from_index(mod, i);
        for (std::size_t k = 0; k < width; ++k) coords[i * width + k] = static_cast<int>(p.coords()[k]);
    }

    // Kernel entries are at most d and coordinates below d, so the form is
    // below width * d * d and reduces through a table.
    std::vector<std::uint8_t> reduce(width * static_cast<std::size_t>(d * d));
    for (std::size_t k = 0; k < reduce.size(); ++k) reduce[k] = static_cast<std::uint8_t>(k % static_cast<std::size_t>(d));

    std::vector<Complex> out(size);
    std::vector<int> kernel(width);
    // Buckets by kernel exponent. Each block of d^2 consecutive points (the
    // last two axes) is summed in double and then folded into extended
    // precision, so the oracle's own rounding stays well below the
    // factorized path's without paying for x87 adds in the inner loop.
    const std::size_t du = static_cast<std::size_t>(d);
    const std::size_t block = du * du;
    std::vector<long double> re(du), im(du);
    std::vector<double> block_re(du), block_im(du);
    for (std::size_t u = 0; u < size; ++u) {
        const int *cu = &coords[u * width];
        // Forward: [u,v] = sum_i u_Z[i] v_X[i] - u_X[i] v_Z[i].
        // Inverse: -[v,u], which is the same linear form in v.
        for (int i = 0; i < n; ++i) {
            kernel[static_cast<std::size_t>(i)] = d - cu[n + i];
            kernel[static_cast<std::size_t>(n + i)] = cu[i];
        }
        const int k_outer = kernel[width - 2], k_inner = kernel[width - 1];
        std::fill(re.begin(), re.end(), 0.0L);
        std::fill(im.begin(), im.end(), 0.0L);
        for (std::size_t v0 = 0; v0 < size; v0 += block) {
            const int *cv = &coords[v0 * width];
            int prefix = 0;
            for (std::size_t k = 0; k + 2 < width; ++k) prefix += kernel[k] * cv[k];
            std::fill(block_re.begin(), block_re.end(), 0.0);
            std::fill(block_im.begin(), block_im.end(), 0.0);
            std::size_t v = v0;
            for (int a = 0; a < d; ++a)
                for (int b = 0; b < d; ++b, ++v) {
                    const std::size_t e = reduce[static_cast<std::size_t>(prefix + k_outer * a + k_inner * b)];
                    block_re[e] += f[v].real();
                    block_im[e] += f[v].imag();
                }
            for (std::size_t e = 0; e < du; ++e) {
                re[e] += block_re[e];
                im[e] += block_im[e];
            }
        }
        long double acc_re = 0.0L, acc_im = 0.0L;
        for (int k = 0; k < d; ++k) {
            const auto e = static_cast<std::size_t>(k);
            const long double wr = omega[k].real(), wi = omega[k].imag();
            acc_re += wr * re[e] - wi * im[e];
            acc_im += wr * im[e] + wi * re[e];
        }
        out[u] = Complex(static_cast<double>(acc_re), static_cast<double>(acc_im));
    }
    if (direction == TransformDirection::Inverse) {
        const double scale = 1.0 / static_cast<double>(size);
        for (auto &c : out) c *= scale;
    }
    return out;
}

}  // namespace qwigner
