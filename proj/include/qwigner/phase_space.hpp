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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace qwigner {

/// An element of Z_d, always kept in {0, ..., d-1}.
using Residue = int;

/// Local dimension d (odd, >= 3) and number of qudits n (>= 1).
///
/// Z_d is a ring, not a field, when d is composite (d = 9, 15, ...). Nothing
/// in this library assumes invertibility of anything except 2.
class Modulus {
   public:
    Modulus(int d, int n);

    int d() const noexcept { return d_; }
    int n() const noexcept { return n_; }

    /// d^n, the Hilbert space dimension.
    std::size_t hilbert_dim() const noexcept { return hilbert_dim_; }
    /// d^{2n}, the number of phase points.
    std::size_t num_points() const noexcept { return num_points_; }

    Residue reduce(std::int64_t x) const noexcept {
        std::int64_t r = x % d_;
        return static_cast<Residue>(r < 0 ? r + d_ : r);
    }

    /// The unique y with 2y = x (mod d), i.e. x * (d+1)/2.
    Residue half(Residue x) const noexcept {
        return reduce(static_cast<std::int64_t>(x) * ((d_ + 1) / 2));
    }

    bool operator==(const Modulus &other) const noexcept { return d_ == other.d_ && n_ == other.n_; }

   private:
    int d_;
    int n_;
    std::size_t hilbert_dim_;
    std::size_t num_points_;
};

/// u = (u_Z, u_X) in V = Z_d^n x Z_d^n.
///
/// Points are ordered and indexed lexicographically by (u_Z, u_X): the 2n
/// coordinates form a mixed-radix number with u_Z[0] most significant.
class PhasePoint {
   public:
    /// The zero point.
    explicit PhasePoint(const Modulus &mod);
    /// Components are reduced mod d; each span must have length n.
    PhasePoint(const Modulus &mod, std::span<const std::int64_t> z, std::span<const std::int64_t> x);
    PhasePoint(const Modulus &mod, std::initializer_list<std::int64_t> z, std::initializer_list<std::int64_t> x);

    static PhasePoint from_index(const Modulus &mod, std::size_t index);
    /// e_i (a Z on qudit i) and f_i (an X on qudit i).
    static PhasePoint basis_z(const Modulus &mod, int i);
    static PhasePoint basis_x(const Modulus &mod, int i);

    const Modulus &modulus() const noexcept { return mod_; }
    std::span<const Residue> z() const noexcept { return {coords_.data(), coords_.size() / 2}; }
    std::span<const Residue> x() const noexcept {
        return {coords_.data() + coords_.size() / 2, coords_.size() / 2};
    }
    /// (u_Z, u_X) concatenated.
    std::span<const Residue> coords() const noexcept { return coords_; }

    std::size_t index() const noexcept;
    bool is_zero() const noexcept;

    PhasePoint operator+(const PhasePoint &other) const;
    PhasePoint operator-(const PhasePoint &other) const;
    PhasePoint operator-() const;
    PhasePoint scaled(std::int64_t k) const;

    bool operator==(const PhasePoint &other) const noexcept {
        return mod_ == other.mod_ && coords_ == other.coords_;
    }
    std::strong_ordering operator<=>(const PhasePoint &other) const noexcept {
        return coords_ <=> other.coords_;
    }

    std::string str() const;

   private:
    PhasePoint(const Modulus &mod, std::vector<Residue> coords) : mod_(mod), coords_(std::move(coords)) {}

    Modulus mod_;
    std::vector<Residue> coords_;
};

/// Standard inner product on Z_d^n. Throws DimensionError on length mismatch.
Residue inner_product(const Modulus &mod, std::span<const Residue> a, std::span<const Residue> b);

/// [u, v] = (u_Z|v_X) - (u_X|v_Z) mod d. Zero iff T_u and T_v commute.
Residue symplectic_form(const PhasePoint &u, const PhasePoint &v);

class Submodule;
class OutcomeForm;
Submodule span(const Modulus &mod, std::span<const PhasePoint> generators);
OutcomeForm outcome_form(const Modulus &mod, std::span<const PhasePoint> generators, std::span<const Residue> s);

/// Z_d-submodule of V generated by a list of points, with its elements
/// enumerated in canonical order.
class Submodule {
   public:
    const std::vector<PhasePoint> &generators() const noexcept { return generators_; }
    const std::vector<PhasePoint> &elements() const noexcept { return elements_; }
    std::size_t size() const noexcept { return elements_.size(); }
    bool contains(const PhasePoint &u) const;
    /// Position of u in elements(), if present.
    std::optional<std::size_t> position(const PhasePoint &u) const;

   private:
    friend Submodule span(const Modulus &, std::span<const PhasePoint>);
    friend class OutcomeForm;
    friend OutcomeForm outcome_form(const Modulus &, std::span<const PhasePoint>, std::span<const Residue>);
    Submodule() = default;

    std::vector<PhasePoint> generators_;
    std::vector<PhasePoint> elements_;
};

/// Closure of the generators under addition and scalar multiplication. An
/// empty list yields the zero submodule. Enumerates by closure, so it is
/// correct over Z_d for composite d.
Submodule span(const Modulus &mod, std::span<const PhasePoint> generators);

/// The Z_d-linear form l_s on M_a with l_s(sum x_i a_i) = sum x_i s_i.
class OutcomeForm {
   public:
    const Submodule &base() const noexcept { return base_; }
    /// Values parallel to base().elements().
    const std::vector<Residue> &values() const noexcept { return values_; }
    /// Throws InvalidArgumentError when u is outside the base submodule.
    Residue operator()(const PhasePoint &u) const;

   private:
    friend OutcomeForm outcome_form(const Modulus &, std::span<const PhasePoint>, std::span<const Residue>);
    OutcomeForm() = default;

    Submodule base_;
    std::vector<Residue> values_;
};

/// Builds l_s after checking that the generators are pairwise isotropic
/// (IsotropyError) and that every representation of every element of M_a
/// gives the same value (InconsistentOutcomeError). s must have one entry
/// per generator (DimensionError).
OutcomeForm outcome_form(const Modulus &mod, std::span<const PhasePoint> generators,
                         std::span<const Residue> s);

/// If table (indexed by PhasePoint::index) is additive on all of V, returns
/// the unique w with table(u) = [u, w]; otherwise std::nullopt.
std::optional<PhasePoint> is_character(const Modulus &mod, std::span<const Residue> table);

/// Calls f(u) for every point of V in canonical order.
template <typename F>
void for_each_point(const Modulus &mod, F &&f) {
    for (std::size_t i = 0; i < mod.num_points(); ++i) f(PhasePoint::from_index(mod, i));
}

}  // namespace qwigner
