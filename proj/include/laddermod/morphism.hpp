#pragma once

#include <optional>
#include <string>
#include <vector>

#include "laddermod/persistence.hpp"
#include "laddermod/result.hpp"

namespace laddermod {

// Morphism Phi: dom -> cod. Both modules are padded to the union of their
// grids; comps[t - origin()] : dom_t -> cod_t.
class LadderModule {
public:
    LadderModule(const PersistenceModule& dom, const PersistenceModule& cod, std::vector<Matrix> comps);

    const PersistenceModule& dom() const { return dom_; }
    const PersistenceModule& cod() const { return cod_; }
    const Field& field() const { return dom_.field(); }
    Index origin() const { return dom_.origin(); }
    Index last() const { return dom_.last(); }
    const std::vector<Matrix>& comps() const { return comps_; }

    // zero-size outside the grid
    Matrix component(Index t) const;

private:
    PersistenceModule dom_;
    PersistenceModule cod_;
    std::vector<Matrix> comps_;
};

// Builds a ladder from components indexed on [lo, lo + comps.size() - 1]; that
// range must cover every index where both dom and cod are nonzero, and any
// component outside the union grid must be zero-size.
LadderModule make_ladder(const PersistenceModule& dom, const PersistenceModule& cod, Index lo,
                         std::vector<Matrix> comps);

struct SquareViolation {
    Index index;  // the square (index-1) -> index fails
    std::string str() const;
};

std::optional<SquareViolation> validate_ladder(const LadderModule& m);

LadderModule zero_morphism(const PersistenceModule& dom, const PersistenceModule& cod);
LadderModule identity_morphism(const PersistenceModule& m);
// outer o inner; inner.cod must be equivalent to outer.dom
LadderModule compose(const LadderModule& outer, const LadderModule& inner);
// Phi(delta) : V(delta) -> W(delta)
LadderModule shift_ladder(const LadderModule& m, Index delta);
// [s]_m : m -> m(s), components v_{t,t+s}; s >= 0
LadderModule inner_shift_morphism(const PersistenceModule& m, Index s);
// same dom, cod (up to padding) and same components
bool ladder_equal(const LadderModule& x, const LadderModule& y);

class SupportViolation : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Rows are codomain bar generators, columns domain bar generators.
struct MorphismMatrix {
    std::vector<BarGenerator> row_gens;
    std::vector<BarGenerator> col_gens;
    Matrix entries;

    const Interval& row_bar(std::size_t r) const { return row_gens.at(r).bar; }
    const Interval& col_bar(std::size_t c) const { return col_gens.at(c).bar; }
    std::string str() const;
};

MorphismMatrix to_single_matrix(const LadderModule& m, const BarcodeBasis& dom_basis, const BarcodeBasis& cod_basis);
LadderModule from_single_matrix(const MorphismMatrix& mm, const PersistenceModule& dom, const PersistenceModule& cod,
                                const BarcodeBasis& dom_basis, const BarcodeBasis& cod_basis);

// First nonzero entry violating row bar <= col bar in the overlap order, if any.
std::optional<std::pair<std::size_t, std::size_t>> support_violation(const MorphismMatrix& mm);
// Codomain generators with a nonzero coefficient in column `col`.
std::vector<BarGenerator> support(const MorphismMatrix& mm, std::size_t col);
// Relabels generator bars by [a - row_delta, b - row_delta] etc.
MorphismMatrix shift_generators(const MorphismMatrix& mm, Index row_delta, Index col_delta);
// Product, then zero every entry whose row bar does not precede its column bar.
MorphismMatrix compose_single(const MorphismMatrix& outer, const MorphismMatrix& inner);

struct InterleavingCertificate {
    Index delta = 0;
    bool interleaving = false;  // built from a delta-interleaving pair rather than given as an inverse pair
    Index lo = 0;               // indices lo..hi were checked
    Index hi = 0;
    std::vector<Matrix> psi_after_phi;  // Psi_t Phi_t, equal to v_{t,t+2delta}
    std::vector<Matrix> phi_after_psi;  // Phi_{t+2delta} Psi_t, equal to w_{t,t+2delta}
};

struct TriangleFailure {
    std::string family;  // "psi.phi" or "phi.psi"
    Index index;
    std::string str() const;
};

using Certification = Result<InterleavingCertificate, TriangleFailure>;

// Phi: V -> W, Psi: W -> V(2 delta)
Certification check_delta_invertible(const LadderModule& phi, const LadderModule& psi, Index delta);
// Phi: V -> W(delta), Psi: W -> V(delta)
Certification check_interleaving(const LadderModule& phi, const LadderModule& psi, Index delta);
struct TriangleReport {
    std::optional<Index> psi_phi;  // first failing index per family, if any
    std::optional<Index> phi_psi;
    bool ok() const { return !psi_phi && !phi_psi; }
};

// Both families checked in full; same index conventions as the two checks above.
TriangleReport triangle_report(const LadderModule& phi, const LadderModule& psi, Index delta, bool interleaving);

// (Phi, Psi(delta)) for an interleaving pair (Phi, Psi)
std::pair<LadderModule, LadderModule> interleaving_to_invertible(const LadderModule& phi, const LadderModule& psi,
                                                                 Index delta);

}  // namespace laddermod
