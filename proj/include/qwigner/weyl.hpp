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

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "qwigner/phase_space.hpp"

namespace qwigner {

using Complex = std::complex<double>;

/// Dense d^n x d^n matrix. Basis states |a> with a in Z_d^n are indexed as
/// mixed-radix integers, qudit 0 most significant.
using DenseOperator = Eigen::MatrixXcd;

/// Default cap on d^n for anything that materializes a dense matrix.
inline constexpr std::size_t kDefaultSizeCap = 4096;

/// Throws CapacityError when d^n exceeds size_cap.
void check_size_cap(const Modulus &mod, std::size_t size_cap);

/// Table of omega^k = exp(2 pi i k / d) for k in Z_d.
class RootsOfUnity {
   public:
    explicit RootsOfUnity(int d);
    const Complex &operator[](Residue k) const noexcept { return table_[static_cast<std::size_t>(k)]; }
    int d() const noexcept { return static_cast<int>(table_.size()); }

   private:
    std::vector<Complex> table_;
};

/// A generalized Pauli operator omega^phase Z^{u_Z} X^{u_X}, kept symbolically.
///
/// phase() is the exponent on the bare monomial, which makes (phase, point)
/// a unique representation. relative_phase() is the exponent a in
/// omega^a T_u, where T_u is the canonical Heisenberg-Weyl operator.
class WeylOperator {
   public:
    WeylOperator(Residue phase, PhasePoint point);

    Residue phase() const noexcept { return phase_; }
    const PhasePoint &point() const noexcept { return point_; }
    const Modulus &modulus() const noexcept { return point_.modulus(); }
    Residue relative_phase() const noexcept;

    bool operator==(const WeylOperator &other) const noexcept {
        return phase_ == other.phase_ && point_ == other.point_;
    }

   private:
    Residue phase_;
    PhasePoint point_;
};

/// The canonical Heisenberg-Weyl operator T_u = omega^{-(u_Z|u_X)/2} Z^{u_Z} X^{u_X}.
WeylOperator weyl(const PhasePoint &u);

/// Exact product A*B. For canonical operators this is
/// T_u T_v = omega^{[u,v]/2} T_{u+v}. Throws DimensionError on modulus mismatch.
WeylOperator compose(const WeylOperator &a, const WeylOperator &b);

/// A^dagger = A^{-1}.
WeylOperator dagger(const WeylOperator &a);

/// A^k for any integer k (negative powers go through dagger).
WeylOperator power(const WeylOperator &a, std::int64_t k);

/// Dense realization. Throws CapacityError when d^n > size_cap.
DenseOperator matrix(const WeylOperator &a, std::size_t size_cap = kDefaultSizeCap);

/// Visits the d^n nonzero entries of a Weyl operator: f(row, col, exponent)
/// where the entry equals omega^exponent. Column a maps to row a + u_X.
template <typename F>
void for_each_entry(const WeylOperator &op, F &&f) {
    const Modulus &mod = op.modulus();
    const int n = mod.n();
    const int d = mod.d();
    auto z = op.point().z();
    auto x = op.point().x();
    std::vector<int> digits(static_cast<std::size_t>(n), 0);
    for (std::size_t col = 0; col < mod.hilbert_dim(); ++col) {
        std::size_t row = 0;
        std::int64_t exponent = op.phase();
        for (int i = 0; i < n; ++i) {
            const int shifted = (digits[i] + x[i]) % d;
            row = row * static_cast<std::size_t>(d) + static_cast<std::size_t>(shifted);
            exponent += static_cast<std::int64_t>(z[i]) * shifted;
        }
        f(row, col, mod.reduce(exponent));
        for (int i = n - 1; i >= 0; --i) {
            if (++digits[i] < d) break;
            digits[i] = 0;
        }
    }
}

/// Tr(A rho) in O(d^n) without materializing A.
Complex trace_with(const WeylOperator &a, const DenseOperator &rho);

}  // namespace qwigner
