#pragma once

#include <string>
#include <vector>

#include "laddermod/ladder.hpp"

namespace laddermod {

struct QSplitting {
    Index q = 0;
    PersistenceModule long_part;   // bars of length >= q
    PersistenceModule short_part;  // bars of length < q
    LadderModule pr_long;          // V -> long
    LadderModule pr_short;         // V -> short
    LadderModule inc_long;         // long -> V
    LadderModule inc_short;        // short -> V
    BarcodeBasis basis;            // barcode basis of V the split is read from
    std::vector<std::size_t> long_generators;   // indices into basis.generators
    std::vector<std::size_t> short_generators;
};

QSplitting q_split(const PersistenceModule& m, Index q);

// Nestedness of the bars of length >= q, computed from the full barcode.
Nestedness long_bar_nestedness(const Barcode& b, Index q);

struct CoarseInterleaving {
    LadderModule phi;        // [q/2] o pr : V -> long(q/2)
    LadderModule phi_tilde;  // i(q/2) o [q/2] : long -> V(q/2)
    InterleavingCertificate cert;
};

// requires q even
CoarseInterleaving coarse_interleaving(const QSplitting& s);
// i(q) o [q] : long -> V(q), a q/2-inverse of pr_long
LadderModule pr_long_inverse(const QSplitting& s);

enum class CoarseVariant { Target, Source, Both };
std::string to_string(CoarseVariant v);
CoarseVariant parse_variant(const std::string& s);

struct InducedPair {
    LadderModule phi;
    LadderModule psi;  // phi's (delta + q/2)-inverse
    Index delta;       // delta + q/2
    QSplitting dom_split;
    QSplitting cod_split;
    InterleavingCertificate cert;
};

// (phi, psi) must be a certified delta-invertible pair (psi : cod -> dom(2 delta)); q even.
InducedPair induce_coarse_morphism(const LadderModule& phi, const LadderModule& psi, Index delta, Index q,
                                   CoarseVariant variant);

struct CoarsePrecondition {
    Nestedness dom;  // nestedness of the domain the variant keeps (full or long part)
    Nestedness cod;
    Index delta;
    Index q;
    bool holds;  // 2 delta + q < min(dom, cod)
    std::string str() const;
};

CoarsePrecondition coarse_precondition(const LadderModule& phi, Index delta, Index q, CoarseVariant variant);

struct CoarseDecomposition {
    InducedPair induced;
    CoarsePrecondition precondition;
    Result<LadderDecomposition, ReductionFailure> decomposition;
};

CoarseDecomposition coarse_decompose(const LadderModule& phi, const LadderModule& psi, Index delta, Index q,
                                     CoarseVariant variant);

// Generator vectors of a partial basis, pushed into the full module by the
// split inclusion and completed with the other part's basis.
BarcodeBasis extend_basis(const QSplitting& s, const BarcodeBasis& long_basis);

// Doubles the grid: index 2t holds V_t, 2t+1 a copy joined by the identity,
// so [a,b] becomes [2a, 2b+1] and an odd q becomes 2q.
PersistenceModule refine_grid(const PersistenceModule& m);
LadderModule refine_ladder(const LadderModule& m);

}  // namespace laddermod
