#pragma once

#include <random>
#include <vector>

#include "laddermod/coarse.hpp"

namespace lmtest {

using namespace laddermod;
using Rng = std::mt19937_64;

Index uniform(Rng& rng, Index lo, Index hi);  // inclusive
Scalar random_nonzero(const Field& f, Rng& rng);

// Direct sum of interval modules, one generator per entry of `bars`, on the
// grid [lo, hi]. At each t the alive generators sit in list order.
struct BarModule {
    std::vector<Interval> bars;
    PersistenceModule module;
    std::size_t position(std::size_t k, Index t) const;
};
BarModule bar_module(const Field& f, std::vector<Interval> bars, Index lo, Index hi);

// coefficient `coef` from dom generator `src` to cod generator `dst`
struct GenLink {
    std::size_t src;
    std::size_t dst;
    Scalar coef;
};
LadderModule link_morphism(const BarModule& dom, const BarModule& cod, const std::vector<GenLink>& links);

Matrix random_invertible(const Field& f, std::size_t n, Rng& rng);
BasisChange random_basis_change(const PersistenceModule& m, Rng& rng);
// g at t, identity (possibly 0x0) outside its grid
Matrix change_at(const BasisChange& g, Index t, std::size_t dim);
// Phi'_t = gc_t Phi_t gd_t^{-1}, with the modules transformed accordingly
LadderModule conjugate(const LadderModule& m, const BasisChange& gd, const BasisChange& gc);
// componentwise inverse of an isomorphism
LadderModule invert(const LadderModule& m);
// identity plus random links from later to earlier generators along the overlap order
LadderModule random_automorphism(const BarModule& m, Rng& rng);

std::vector<Interval> random_bars(Rng& rng, std::size_t max_bars, Index lo, Index hi, Index max_len);

struct InvertiblePair {
    std::vector<Interval> v_bars;
    std::vector<Interval> w_bars;  // bars of the codomain W' of phi
    LadderModule phi;              // V -> W'
    LadderModule psi;              // W' -> V(2 delta)
    Index delta;
};

// Matched interval pairs, then basis perturbations and scrambling.
// `nested_bound`: V and W' nestedness must exceed it (computed on bars of
// length >= q when q > 0).
InvertiblePair random_invertible_pair(const Field& f, Rng& rng, Index delta, Index q, Index nested_bound);

// links from dom generator k to cod generator l wherever cod bar <= dom bar, each kept with probability density
std::vector<GenLink> random_links(const Field& f, Rng& rng, const std::vector<Interval>& dom_bars,
                                  const std::vector<Interval>& cod_bars, double density);

// Random morphism, overlap-respecting generator links, scrambled.
struct RandomMorphism {
    std::vector<Interval> dom_bars;
    std::vector<Interval> cod_bars;
    LadderModule phi;
};
RandomMorphism random_morphism(const Field& f, Rng& rng, const std::vector<Interval>& dom_bars,
                               const std::vector<Interval>& cod_bars, double density);

}  // namespace lmtest
