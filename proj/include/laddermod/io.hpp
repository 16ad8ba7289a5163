#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "laddermod/morphism.hpp"

namespace laddermod {

class ParseError : public std::runtime_error {
public:
    ParseError(std::string source, int line, const std::string& what);
    const std::string& source() const { return source_; }
    int line() const { return line_; }

private:
    std::string source_;
    int line_;
};

// LADDERMOD_FIELD if set (e.g. "rational", "prime 5", "F5"), else the rationals.
Field default_field();

// Module file:
//   laddermod module
//   field rational | field prime p
//   origin t0
//   dims n0 n1 ...
//   map t RxC        A_t : V_{t-1} -> V_t, followed by R rows of C entries
PersistenceModule parse_module(const std::string& text, const std::string& source = "<input>");
std::string print_module(const PersistenceModule& m);
PersistenceModule load_module(const std::filesystem::path& path);

enum class PairKind { Interleaving, Invertible };

struct NamedModule {
    std::string name;
    PersistenceModule module;
    std::optional<std::string> file;  // set when referenced rather than inlined
};

struct NamedMorphism {
    std::string name;
    std::string dom;
    std::string cod;
    Index shift;  // the codomain is cod(shift)
    LadderModule ladder;
};

// Morphism document:
//   laddermod morphisms
//   field ...
//   delta d                          (optional)
//   pair interleaving|invertible     (optional)
//   module NAME ... end  |  module NAME file PATH
//   morphism NAME DOM COD SHIFT
//   component t RxC                  one per index of the ladder grid
//   end
struct MorphismDocument {
    Field field = Field::rational();
    std::optional<Index> delta;
    std::optional<PairKind> pair;
    std::vector<NamedModule> modules;
    std::vector<NamedMorphism> morphisms;

    const NamedMorphism& morphism(const std::string& name) const;
    const PersistenceModule& module(const std::string& name) const;
};

MorphismDocument parse_morphism_document(const std::string& text, const std::filesystem::path& base_dir = ".",
                                         const std::string& source = "<input>");
std::string print_morphism_document(const MorphismDocument& doc);
MorphismDocument load_morphism_document(const std::filesystem::path& path);

// "[0,4] [1,7]x2"; empty string for the zero module
std::string barcode_listing(const Barcode& b);
// one row per bar copy, in lexicographic order
std::string barcode_text_diagram(const Barcode& b, Index lo, Index hi);
std::string barcode_svg(const Barcode& b, Index lo, Index hi, const std::string& title = "");

std::string read_file(const std::filesystem::path& path);

}  // namespace laddermod
