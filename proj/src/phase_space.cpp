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

#include "qwigner/phase_space.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <unordered_map>

#include "qwigner/error.hpp"

namespace qwigner {

namespace {

// Largest table size we are willing to index with std::size_t arithmetic.
constexpr std::size_t kMaxPoints = std::size_t{1} << 62;

std::size_t checked_pow(int base, int exp) {
    std::size_t r = 1;
    for (int i = 0; i < exp; ++i) {
        if (r > kMaxPoints / static_cast<std::size_t>(base))
            throw CapacityError("phase space size d^(2n) overflows for d=" + std::to_string(base));
        r *= static_cast<std::size_t>(base);
    }
    return r;
}

void require_same(const Modulus &a, const Modulus &b) {
    if (!(a == b)) throw DimensionError("points belong to different phase spaces");
}

}  // namespace

Modulus::Modulus(int d, int n) : d_(d), n_(n) {
    if (d < 3 || d % 2 == 0)
        throw InvalidArgumentError("local dimension d must be an odd integer >= 3, got " + std::to_string(d));
    if (n < 1) throw InvalidArgumentError("number of qudits n must be >= 1, got " + std::to_string(n));
    num_points_ = checked_pow(d, 2 * n);
    hilbert_dim_ = checked_pow(d, n);
}

PhasePoint::PhasePoint(const Modulus &mod) : mod_(mod), coords_(2 * static_cast<std::size_t>(mod.n()), 0) {}

PhasePoint::PhasePoint(const Modulus &mod, std::span<const std::int64_t> z, std::span<const std::int64_t> x)
    : mod_(mod) {
    const auto n = static_cast<std::size_t>(mod.n());
    if (z.size() != n || x.size() != n)
        throw DimensionError("phase point needs " + std::to_string(n) + " Z and X components");
    coords_.reserve(2 * n);
    for (auto v : z) coords_.push_back(mod.reduce(v));
    for (auto v : x) coords_.push_back(mod.reduce(v));
}

PhasePoint::PhasePoint(const Modulus &mod, std::initializer_list<std::int64_t> z,
                       std::initializer_list<std::int64_t> x)
    : PhasePoint(mod, std::span<const std::int64_t>(z.begin(), z.size()),
                 std::span<const std::int64_t>(x.begin(), x.size())) {}

PhasePoint PhasePoint::from_index(const Modulus &mod, std::size_t index) {
    if (index >= mod.num_points()) throw DimensionError("phase point index out of range");
    const auto len = 2 * static_cast<std::size_t>(mod.n());
    std::vector<Residue> coords(len);
    const auto d = static_cast<std::size_t>(mod.d());
    for (std::size_t k = len; k-- > 0;) {
        coords[k] = static_cast<Residue>(index % d);
        index /= d;
    }
    return PhasePoint(mod, std::move(coords));
}

PhasePoint PhasePoint::basis_z(const Modulus &mod, int i) {
    if (i < 0 || i >= mod.n()) throw DimensionError("qudit index out of range");
    PhasePoint p(mod);
    p.coords_[static_cast<std::size_t>(i)] = 1;
    return p;
}

PhasePoint PhasePoint::basis_x(const Modulus &mod, int i) {
    if (i < 0 || i >= mod.n()) throw DimensionError("qudit index out of range");
    PhasePoint p(mod);
    p.coords_[static_cast<std::size_t>(mod.n() + i)] = 1;
    return p;
}

std::size_t PhasePoint::index() const noexcept {
    std::size_t r = 0;
    const auto d = static_cast<std::size_t>(mod_.d());
    for (auto c : coords_) r = r * d + static_cast<std::size_t>(c);
    return r;
}

bool PhasePoint::is_zero() const noexcept {
    return std::all_of(coords_.begin(), coords_.end(), [](Residue c) { return c == 0; });
}

PhasePoint PhasePoint::operator+(const PhasePoint &other) const {
    require_same(mod_, other.mod_);
    std::vector<Residue> c(coords_.size());
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = mod_.reduce(coords_[k] + other.coords_[k]);
    return PhasePoint(mod_, std::move(c));
}

PhasePoint PhasePoint::operator-(const PhasePoint &other) const {
    require_same(mod_, other.mod_);
    std::vector<Residue> c(coords_.size());
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = mod_.reduce(coords_[k] - other.coords_[k]);
    return PhasePoint(mod_, std::move(c));
}

PhasePoint PhasePoint::operator-() const { return scaled(-1); }

PhasePoint PhasePoint::scaled(std::int64_t k) const {
    const auto kk = mod_.reduce(k);
    std::vector<Residue> c(coords_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = mod_.reduce(static_cast<std::int64_t>(kk) * coords_[i]);
    return PhasePoint(mod_, std::move(c));
}

std::string PhasePoint::str() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t k = 0; k < coords_.size(); ++k) {
        if (k == coords_.size() / 2) os << " |";
        if (k > 0) os << ' ';
        os << coords_[k];
    }
    os << ')';
    return os.str();
}

Residue inner_product(const Modulus &mod, std::span<const Residue> a, std::span<const Residue> b) {
    const auto n = static_cast<std::size_t>(mod.n());
    if (a.size() != n || b.size() != n)
        throw DimensionError("inner product expects two tuples of length " + std::to_string(n));
    std::int64_t acc = 0;
    for (std::size_t i = 0; i < n; ++i) acc += static_cast<std::int64_t>(a[i]) * b[i];
    return mod.reduce(acc);
}

Residue symplectic_form(const PhasePoint &u, const PhasePoint &v) {
    require_same(u.modulus(), v.modulus());
    const auto &mod = u.modulus();
    return mod.reduce(static_cast<std::int64_t>(inner_product(mod, u.z(), v.x())) -
                      inner_product(mod, u.x(), v.z()));
}

bool Submodule::contains(const PhasePoint &u) const { return position(u).has_value(); }

std::optional<std::size_t> Submodule::position(const PhasePoint &u) const {
    auto it = std::lower_bound(elements_.begin(), elements_.end(), u);
    if (it == elements_.end() || !(*it == u)) return std::nullopt;
    return static_cast<std::size_t>(it - elements_.begin());
}

namespace {

// Grows {0} one generator at a time: after step i the map holds every
// element of <a_1..a_i> together with the value of sum x_j s_j. Visiting all
// pairs (element, k) at each step covers every representation, so any
// disagreement on a point shows up as a collision with a different value.
std::vector<std::pair<PhasePoint, Residue>> closure(const Modulus &mod, std::span<const PhasePoint> generators,
                                                   std::span<const Residue> s) {
    std::unordered_map<std::size_t, std::pair<PhasePoint, Residue>> seen;
    PhasePoint zero(mod);
    seen.emplace(zero.index(), std::make_pair(zero, Residue{0}));

    for (std::size_t g = 0; g < generators.size(); ++g) {
        require_same(mod, generators[g].modulus());
        std::vector<std::pair<PhasePoint, Residue>> current;
        current.reserve(seen.size());
        for (auto &[idx, entry] : seen) current.push_back(entry);
        const Residue sg = s.empty() ? 0 : mod.reduce(s[g]);
        for (const auto &[base, base_value] : current) {
            PhasePoint p = base;
            Residue value = base_value;
            for (int k = 1; k < mod.d(); ++k) {
                p = p + generators[g];
                value = mod.reduce(static_cast<std::int64_t>(value) + sg);
                auto [it, inserted] = seen.emplace(p.index(), std::make_pair(p, value));
                if (!inserted && it->second.second != value)
                    throw InconsistentOutcomeError("outcome tuple is inconsistent: point " + p.str() +
                                                   " would need values " + std::to_string(it->second.second) +
                                                   " and " + std::to_string(value));
            }
        }
    }

    std::vector<std::pair<PhasePoint, Residue>> out;
    out.reserve(seen.size());
    for (auto &[idx, entry] : seen) out.push_back(std::move(entry));
    std::sort(out.begin(), out.end(), [](const auto &a, const auto &b) { return a.first < b.first; });
    return out;
}

}  // namespace

Submodule span(const Modulus &mod, std::span<const PhasePoint> generators) {
    Submodule m;
    m.generators_.assign(generators.begin(), generators.end());
    for (auto &[p, v] : closure(mod, generators, {})) m.elements_.push_back(std::move(p));
    return m;
}

Residue OutcomeForm::operator()(const PhasePoint &u) const {
    auto pos = base_.position(u);
    if (!pos) throw InvalidArgumentError("point " + u.str() + " is outside the submodule of this outcome form");
    return values_[*pos];
}

OutcomeForm outcome_form(const Modulus &mod, std::span<const PhasePoint> generators, std::span<const Residue> s) {
    if (s.size() != generators.size())
        throw DimensionError("outcome tuple has " + std::to_string(s.size()) + " entries for " +
                             std::to_string(generators.size()) + " generators");
    for (std::size_t i = 0; i < generators.size(); ++i)
        for (std::size_t j = i + 1; j < generators.size(); ++j)
            if (symplectic_form(generators[i], generators[j]) != 0)
                throw IsotropyError("generators " + generators[i].str() + " and " + generators[j].str() +
                                    " do not commute");
    OutcomeForm f;
    f.base_.generators_.assign(generators.begin(), generators.end());
    for (auto &[p, v] : closure(mod, generators, s)) {
        f.base_.elements_.push_back(std::move(p));
        f.values_.push_back(v);
    }
    return f;
}

std::optional<PhasePoint> is_character(const Modulus &mod, std::span<const Residue> table) {
    if (table.size() != mod.num_points())
        throw DimensionError("character table must have one entry per phase point");
    const int n = mod.n();
    // [e_i, w] = w_X[i] and [f_i, w] = -w_Z[i] pin down the only candidate.
    std::vector<std::int64_t> wz(n), wx(n);
    for (int i = 0; i < n; ++i) {
        wx[i] = table[PhasePoint::basis_z(mod, i).index()];
        wz[i] = -static_cast<std::int64_t>(table[PhasePoint::basis_x(mod, i).index()]);
    }
    PhasePoint w(mod, wz, wx);
    for (std::size_t idx = 0; idx < mod.num_points(); ++idx) {
        if (mod.reduce(table[idx]) != symplectic_form(PhasePoint::from_index(mod, idx), w)) return std::nullopt;
    }
    return w;
}

}  // namespace qwigner
