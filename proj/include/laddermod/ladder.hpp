#pragma once

#include <optional>
#include <string>
#include <vector>

#include "laddermod/morphism.hpp"

namespace laddermod {

enum class OpKind {
    Ao1Col,    // col target += coef * col source, same bar
    Ao1Row,    // row target += coef * row source, same bar
    Ao2,       // col target += coef * col source, bar(source) <= bar(target) in the overlap order
    Ao3,       // row target += coef * row source, bar(target) <= bar(source) in the overlap order
    ScaleRow,  // row target *= coef
    ScaleCol,  // col target *= coef
};

std::string to_string(OpKind k);

struct AdmissibleOp {
    OpKind kind;
    std::size_t target;
    std::size_t source;
    Scalar coef;

    std::string str(const MorphismMatrix& mm) const;
};

bool is_legal(const AdmissibleOp& op, const MorphismMatrix& mm);
// throws std::invalid_argument on an illegal op
void apply_op(const AdmissibleOp& op, MorphismMatrix& mm);

bool is_matching_form(const Matrix& m);
inline bool is_matching_form(const MorphismMatrix& mm) { return is_matching_form(mm.entries); }

struct ReductionFailure {
    std::size_t row;
    std::size_t col;
    Interval row_bar;
    Interval col_bar;
    std::size_t row_slot;
    std::size_t col_slot;
    std::string reason;
    std::string str() const;
};

struct Reduction {
    MorphismMatrix reduced;
    std::vector<AdmissibleOp> ops;
};

// Choices the schedule leaves open inside a block; all produce the same
// multiset of summands.
struct ReductionOptions {
    bool prefer_row_clearing = true;  // try the pivot below before the pivot to the left
    bool last_pivot = false;          // AO1 pivot: lexicographically last nonzero instead of first
};

Result<Reduction, ReductionFailure> reduce_to_matching_form(const MorphismMatrix& mm, ReductionOptions opts = {});

struct RPair {
    Interval dom_bar;
    Interval cod_bar;
    std::size_t multiplicity;
    friend bool operator==(const RPair&, const RPair&) = default;
};

struct LadderDecomposition {
    std::vector<RPair> pairs;  // sorted by (dom_bar, cod_bar)
    Barcode plus;              // I+ summands (unmatched domain bars)
    Barcode minus;             // I- summands (unmatched codomain bars)

    // generator-level record: links[k] = (dom generator, cod generator)
    std::vector<std::pair<std::size_t, std::size_t>> links;
    BarcodeBasis dom_basis;
    BarcodeBasis cod_basis;
    MorphismMatrix matching;   // M_Phi in the final bases (matching form)
    std::vector<AdmissibleOp> ops;

    std::size_t multiplicity(const Interval& dom_bar, const Interval& cod_bar) const;
    // "R [a,b]->[c,d]", "I+ [a,b]", "I- [c,d]" lines
    std::vector<std::string> summand_lines() const;
    bool same_summands(const LadderDecomposition& o) const;
};

Result<LadderDecomposition, ReductionFailure> decompose(const LadderModule& m, ReductionOptions opts = {});

// Summands of a matching-form matrix (no bases attached).
LadderDecomposition summands_of(const MorphismMatrix& matching);

struct PreconditionReport {
    Nestedness dom;
    Nestedness cod;
    Index delta;
    bool holds;  // 2 delta < min(dom, cod)
    std::string str() const;
};

PreconditionReport check_nestedness_precondition(const LadderModule& phi, Index delta);

struct DecompositionMismatch {
    Index index;
    std::string what;
    std::string str() const;
};

std::optional<DecompositionMismatch> verify_decomposition(const LadderModule& m, const LadderDecomposition& d);

// Exhaustive check for small instances: does any sequence of admissible
// operations bring mm to matching form?
struct SearchOutcome {
    bool found;
    bool exhausted;  // false when the search hit its limit
    std::size_t explored;
};
// Depth-first over single-entry clearings of every legal kind.
SearchOutcome search_clearings(const MorphismMatrix& mm, std::size_t max_depth, std::size_t max_states);
// Over a prime field: enumerates every automorphism pair (T_cod, T_dom) of the two
// barcodes and tests T_cod * M * T_dom^{-1} for matching form.
SearchOutcome search_automorphisms(const MorphismMatrix& mm, std::size_t max_states);

}  // namespace laddermod
