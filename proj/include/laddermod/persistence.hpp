#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "laddermod/matrix.hpp"

namespace laddermod {

using Index = std::int64_t;

// Closed integer interval [a,b], a <= b.
struct Interval {
    Index a = 0;
    Index b = 0;

    Interval() = default;
    Interval(Index birth, Index death);

    Index length() const { return b - a; }
    bool contains(Index t) const { return a <= t && t <= b; }
    Interval shifted(Index delta) const { return Interval(a - delta, b - delta); }
    std::string str() const;

    // default ordering is lexicographic on (a, b)
    friend auto operator<=>(const Interval&, const Interval&) = default;
};

// i1 < i2, or i1 = i2 and j1 < j2
bool lex_before(const Interval& i, const Interval& j);
// i1 <= i2 <= j1 <= j2
bool overlap_precedes(const Interval& i, const Interval& j);
// i is strictly inside j: j.a < i.a <= i.b < j.b
bool strictly_nested(const Interval& i, const Interval& j);
std::optional<Interval> intersect(const Interval& i, const Interval& j);

class Barcode {
public:
    Barcode() = default;
    Barcode(std::initializer_list<Interval> bars);

    void add(const Interval& bar, std::size_t mult = 1);
    void remove(const Interval& bar, std::size_t mult = 1);  // throws if absent
    std::size_t multiplicity(const Interval& bar) const;
    std::size_t total() const;
    bool empty() const { return bars_.empty(); }
    // number of bars containing [i,j], counted with multiplicity
    std::size_t rank(Index i, Index j) const;
    Barcode shifted(Index delta) const;

    const std::map<Interval, std::size_t>& bars() const { return bars_; }
    auto begin() const { return bars_.begin(); }
    auto end() const { return bars_.end(); }
    // "[0,4] [1,7]x2" style listing in lexicographic order
    std::string str() const;

    friend bool operator==(const Barcode&, const Barcode&) = default;

private:
    std::map<Interval, std::size_t> bars_;
};

// Value in (0, inf]; nullopt stands for infinity.
class Nestedness {
public:
    Nestedness() = default;
    explicit Nestedness(Index v) : v_(v) {}
    static Nestedness infinite() { return {}; }

    bool is_infinite() const { return !v_.has_value(); }
    Index value() const;  // throws when infinite
    std::string str() const;

    friend bool operator==(const Nestedness&, const Nestedness&) = default;
    friend std::strong_ordering operator<=>(const Nestedness& x, const Nestedness& y);

private:
    std::optional<Index> v_;
};

Nestedness nestedness(const Barcode& b);

// Dimensions n_t for t in [origin, origin + l] and maps A_t : V_{t-1} -> V_t for
// t in (origin, origin + l]. Outside the grid every space is zero.
class PersistenceModule {
public:
    PersistenceModule(const Field& f, Index origin, std::vector<std::size_t> dims, std::vector<Matrix> maps);

    static PersistenceModule zero(const Field& f, Index origin, Index last);

    const Field& field() const { return field_; }
    Index origin() const { return origin_; }
    Index last() const { return origin_ + static_cast<Index>(dims_.size()) - 1; }
    std::size_t length() const { return dims_.size() - 1; }
    bool in_grid(Index t) const { return origin_ <= t && t <= last(); }

    std::size_t dim(Index t) const;
    // A_t : V_{t-1} -> V_t; a zero matrix of the right shape when t is at or outside the grid edge
    Matrix structure_map(Index t) const;

    const std::vector<std::size_t>& dims() const { return dims_; }
    const std::vector<Matrix>& maps() const { return maps_; }

    friend bool operator==(const PersistenceModule&, const PersistenceModule&) = default;

private:
    Field field_;
    Index origin_;
    std::vector<std::size_t> dims_;
    std::vector<Matrix> maps_;
};

// v_{i,j} = A_j ... A_{i+1}; requires origin <= i <= j <= last
Matrix inner_morphism_matrix(const PersistenceModule& m, Index i, Index j);
// same, but indices may leave the grid (spaces there are zero); requires i <= j
Matrix inner_map(const PersistenceModule& m, Index i, Index j);

// V(delta)_t = V_{t+delta}; lossless (only the origin moves)
PersistenceModule shift(const PersistenceModule& m, Index delta);
// zero-pad to the grid [lo, hi], which must contain m's grid
PersistenceModule extend(const PersistenceModule& m, Index lo, Index hi);
// equal after padding both to a common grid
bool equivalent(const PersistenceModule& x, const PersistenceModule& y);

struct BasisChange {
    Index origin = 0;
    std::vector<Matrix> g;  // g[t - origin], invertible n_t x n_t
};

// (gA)_t = g_t A_t g_{t-1}^{-1}
PersistenceModule apply_basis_change(const PersistenceModule& m, const BasisChange& g);

struct BarGenerator {
    Interval bar;
    std::size_t slot = 0;
    std::vector<std::size_t> positions;  // positions[t - bar.a]

    std::size_t position(Index t) const;
    std::string label() const;  // "[a,b]#slot"
};

struct BarcodeBasis {
    BasisChange change;          // g_t
    std::vector<Matrix> basis;   // B_t = g_t^{-1}; column k is the k-th basis vector of V_t
    Barcode barcode;
    std::vector<BarGenerator> generators;  // lexicographic by bar, then slot

    Index origin() const { return change.origin; }
    // basis vector of generator k at index t (a column)
    Matrix vector(std::size_t k, Index t) const;
    // generators alive at t
    std::vector<std::size_t> alive_at(Index t) const;
};

BarcodeBasis reduce_to_barcode_basis(const PersistenceModule& m);

// Re-derives B_t, g_t from edited generator vectors. `vectors[k][t - bar.a]` is
// the vector of generator k at t.
BarcodeBasis rebuild_basis(const PersistenceModule& m, const BarcodeBasis& layout,
                           const std::vector<std::vector<Matrix>>& vectors);

// Checks that every (gA)_t is in barcode form and that each generator chains
// exactly as recorded: born at a (not hit), mapped pos_t -> pos_{t+1}, killed after b.
// Returns a description of the first violation.
std::optional<std::string> check_barcode_basis(const PersistenceModule& m, const BarcodeBasis& basis);

}  // namespace laddermod
