#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "laddermod/coarse.hpp"

namespace laddermod {

struct MatchedPair {
    Interval source;
    Interval target;
    std::size_t multiplicity;
};

class PartialMatching {
public:
    void add_pair(const Interval& source, const Interval& target, std::size_t mult = 1);
    void add_unmatched_source(const Interval& bar, std::size_t mult = 1) { unmatched_source_.add(bar, mult); }
    void add_unmatched_target(const Interval& bar, std::size_t mult = 1) { unmatched_target_.add(bar, mult); }

    std::size_t multiplicity(const Interval& source, const Interval& target) const;
    std::vector<MatchedPair> pairs() const;
    const Barcode& unmatched_source() const { return unmatched_source_; }
    const Barcode& unmatched_target() const { return unmatched_target_; }
    // matched plus unmatched bars on each side
    Barcode source_barcode() const;
    Barcode target_barcode() const;
    std::string str() const;

    friend bool operator==(const PartialMatching&, const PartialMatching&) = default;

private:
    std::map<std::pair<Interval, Interval>, std::size_t> pairs_;
    Barcode unmatched_source_;
    Barcode unmatched_target_;
};

// Pairs (domain bar, codomain bar) from the R summands; codomain bars are
// translated by +codomain_shift (a delta-invertible Phi : V -> W(delta) is
// reported against the bars of W).
PartialMatching induced_matching(const LadderDecomposition& d, Index codomain_shift = 0);

mpq_class matching_cost(const PartialMatching& m);

struct CostBound {
    mpq_class cost;
    mpq_class bound;
    bool ok;
};
CostBound check_cost_bound(const PartialMatching& m, const mpq_class& delta);

struct CorrespondenceEntry {
    Interval v_bar;
    Interval w_bar;
    std::size_t phi_mult;  // multiplicity of (v_bar, w_bar) in the matching of phi
    std::size_t psi_mult;  // multiplicity of (w_bar, v_bar) in the matching of psi
};

struct CorrespondenceReport {
    std::vector<CorrespondenceEntry> long_agreements;
    std::vector<CorrespondenceEntry> long_disagreements;
    std::vector<CorrespondenceEntry> short_divergences;  // allowed
    bool ok() const { return long_disagreements.empty(); }
};

// Bars count as long when their length is at least `threshold` (2 delta, or 2 delta + q when coarse).
CorrespondenceReport check_matching_correspondence(const PartialMatching& phi_matching,
                                                   const PartialMatching& psi_matching, Index threshold);

// Image of phi as a submodule of the codomain, in its own coordinates.
PersistenceModule image_module(const LadderModule& phi);
PartialMatching bl_matching_from_barcodes(const Barcode& dom, const Barcode& cod, const Barcode& image,
                                          Index codomain_shift = 0);
PartialMatching bl_matching(const LadderModule& phi, Index codomain_shift = 0);

struct BasisIndependentMatching {
    std::map<std::array<Index, 4>, std::size_t> table;  // (a,b,c,d) -> multiplicity of ([a,b],[c,d])
    std::size_t at(Index a, Index b, Index c, Index d) const;
    // row and column sums bounded by the multiplicities of the two barcodes
    bool satisfies_bounds(const Barcode& source, const Barcode& target) const;
};

BasisIndependentMatching to_basis_independent(const PartialMatching& m);

class SizeGuardExceeded : public std::length_error {
public:
    using std::length_error::length_error;
};

// Exact bottleneck distance; throws SizeGuardExceeded above max_bars bars in total.
mpq_class bottleneck_distance(const Barcode& x, const Barcode& y, std::size_t max_bars = 200);

struct CoarseMatching {
    InducedPair induced;
    LadderModule morphism;  // [q/2] o induced.phi, the interleaving-form map that is decomposed
    Result<LadderDecomposition, ReductionFailure> decomposition;
    PartialMatching matching;  // short bars outside the variant's modules are listed as unmatched
};

// (phi, psi) a delta-invertible pair, phi : V -> W' where W' = W(delta).
CoarseMatching coarse_matching(const LadderModule& phi, const LadderModule& psi, Index delta, Index q,
                               CoarseVariant variant);

std::string format_cost(const mpq_class& c);

}  // namespace laddermod
