#include "laddermod/io.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

namespace laddermod {

ParseError::ParseError(std::string source, int line, const std::string& what)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " + what), source_(std::move(source)), line_(line)
{
}

Field default_field()
{
    const char* env = std::getenv("LADDERMOD_FIELD");
    if (!env || !*env) return Field::rational();
    try {
        return Field::parse(env);
    } catch (const std::exception& e) {
        throw ParseError("LADDERMOD_FIELD", 0, e.what());
    }
}

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path.string(), 0, "cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

namespace {

struct Line {
    int number;
    std::vector<std::string> tokens;
};

class Reader {
public:
    Reader(const std::string& text, std::string source) : source_(std::move(source))
    {
        std::istringstream in(text);
        std::string raw;
        int n = 0;
        while (std::getline(in, raw)) {
            ++n;
            if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
            std::istringstream ls(raw);
            Line l{n, {}};
            for (std::string tok; ls >> tok;) l.tokens.push_back(tok);
            if (!l.tokens.empty()) lines_.push_back(std::move(l));
        }
        last_line_ = n;
    }

    bool done() const { return pos_ >= lines_.size(); }
    const Line& peek() const { return lines_[pos_]; }
    const Line& next()
    {
        if (done()) fail(last_line_, "unexpected end of input");
        return lines_[pos_++];
    }
    [[noreturn]] void fail(int line, const std::string& what) const { throw ParseError(source_, line, what); }
    const std::string& source() const { return source_; }

private:
    std::string source_;
    std::vector<Line> lines_;
    std::size_t pos_ = 0;
    int last_line_ = 0;
};

Index parse_index(const Reader& r, const Line& l, const std::string& tok)
{
    try {
        std::size_t used = 0;
        long long v = std::stoll(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        r.fail(l.number, "expected an integer, got '" + tok + "'");
    }
}

std::size_t parse_count(const Reader& r, const Line& l, const std::string& tok)
{
    Index v = parse_index(r, l, tok);
    if (v < 0) r.fail(l.number, "expected a non-negative integer, got '" + tok + "'");
    return static_cast<std::size_t>(v);
}

std::pair<std::size_t, std::size_t> parse_shape(const Reader& r, const Line& l, const std::string& tok)
{
    auto x = tok.find('x');
    if (x == std::string::npos) r.fail(l.number, "expected a shape RxC, got '" + tok + "'");
    return {parse_count(r, l, tok.substr(0, x)), parse_count(r, l, tok.substr(x + 1))};
}

void expect_arity(const Reader& r, const Line& l, std::size_t n)
{
    if (l.tokens.size() != n)
        r.fail(l.number, "'" + l.tokens[0] + "' expects " + std::to_string(n - 1) + " argument(s)");
}

Matrix read_matrix(Reader& r, const Field& f, std::size_t rows, std::size_t cols)
{
    Matrix m(f, rows, cols);
    if (rows == 0 || cols == 0) return m;
    for (std::size_t i = 0; i < rows; ++i) {
        const Line& l = r.next();
        if (l.tokens.size() != cols)
            r.fail(l.number, "matrix row has " + std::to_string(l.tokens.size()) + " entries, expected " +
                                 std::to_string(cols));
        for (std::size_t j = 0; j < cols; ++j) {
            try {
                m(i, j) = Scalar::parse(f, l.tokens[j]);
            } catch (const std::exception& e) {
                r.fail(l.number, "bad entry '" + l.tokens[j] + "': " + e.what());
            }
        }
    }
    return m;
}

void print_matrix_rows(std::ostringstream& os, const Matrix& m)
{
    if (m.empty_shape()) return;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m(i, j).str();
        os << '\n';
    }
}

Field parse_field_line(const Reader& r, const Line& l)
{
    std::string name;
    for (std::size_t k = 1; k < l.tokens.size(); ++k) name += (k > 1 ? " " : "") + l.tokens[k];
    try {
        return Field::parse(name);
    } catch (const std::exception& e) {
        r.fail(l.number, std::string("bad field: ") + e.what());
    }
}

// origin / dims / map lines, until `end` (when inline) or the end of input
PersistenceModule read_module_body(Reader& r, const Field& f, bool inline_block, int header_line)
{
    std::optional<Index> origin;
    std::optional<std::vector<std::size_t>> dims;
    std::map<Index, Matrix> maps;
    int end_line = header_line;
    while (true) {
        if (r.done()) {
            if (inline_block) r.fail(header_line, "module block is missing 'end'");
            break;
        }
        const Line& l = r.next();
        end_line = l.number;
        const std::string& kw = l.tokens[0];
        if (kw == "end" && inline_block) break;
        if (kw == "origin") {
            expect_arity(r, l, 2);
            origin = parse_index(r, l, l.tokens[1]);
        } else if (kw == "dims") {
            if (l.tokens.size() < 2) r.fail(l.number, "'dims' needs at least one entry");
            std::vector<std::size_t> d;
            for (std::size_t k = 1; k < l.tokens.size(); ++k) d.push_back(parse_count(r, l, l.tokens[k]));
            dims = std::move(d);
        } else if (kw == "map") {
            expect_arity(r, l, 3);
            if (!origin || !dims) r.fail(l.number, "'map' before 'origin' and 'dims'");
            Index t = parse_index(r, l, l.tokens[1]);
            Index last = *origin + static_cast<Index>(dims->size()) - 1;
            if (t <= *origin || t > last)
                r.fail(l.number, "map index " + std::to_string(t) + " outside (" + std::to_string(*origin) + ", " +
                                     std::to_string(last) + "]");
            auto [rows, cols] = parse_shape(r, l, l.tokens[2]);
            std::size_t want_r = (*dims)[t - *origin], want_c = (*dims)[t - 1 - *origin];
            if (rows != want_r || cols != want_c)
                r.fail(l.number, "map " + std::to_string(t) + " must be " + std::to_string(want_r) + "x" +
                                     std::to_string(want_c));
            if (maps.count(t)) r.fail(l.number, "duplicate map " + std::to_string(t));
            maps.emplace(t, read_matrix(r, f, rows, cols));
        } else {
            r.fail(l.number, "unexpected '" + kw + "'");
        }
    }
    if (!origin) r.fail(end_line, "missing 'origin'");
    if (!dims) r.fail(end_line, "missing 'dims'");
    std::vector<Matrix> ms;
    for (std::size_t k = 1; k < dims->size(); ++k) {
        Index t = *origin + static_cast<Index>(k);
        auto it = maps.find(t);
        if (it != maps.end()) {
            ms.push_back(it->second);
        } else if ((*dims)[k] == 0 || (*dims)[k - 1] == 0) {
            ms.emplace_back(f, (*dims)[k], (*dims)[k - 1]);
        } else {
            r.fail(end_line, "missing map " + std::to_string(t));
        }
    }
    return PersistenceModule(f, *origin, std::move(*dims), std::move(ms));
}

void print_module_body(std::ostringstream& os, const PersistenceModule& m)
{
    os << "origin " << m.origin() << '\n';
    os << "dims";
    for (auto d : m.dims()) os << ' ' << d;
    os << '\n';
    for (Index t = m.origin() + 1; t <= m.last(); ++t) {
        Matrix a = m.structure_map(t);
        os << "map " << t << ' ' << a.rows() << 'x' << a.cols() << '\n';
        print_matrix_rows(os, a);
    }
}

}  // namespace

PersistenceModule parse_module(const std::string& text, const std::string& source)
{
    Reader r(text, source);
    if (r.done()) r.fail(1, "empty module file");
    const Line& head = r.next();
    if (head.tokens != std::vector<std::string>{"laddermod", "module"})
        r.fail(head.number, "expected header 'laddermod module'");
    Field f = default_field();
    if (!r.done() && r.peek().tokens[0] == "field") f = parse_field_line(r, r.next());
    return read_module_body(r, f, false, head.number);
}

std::string print_module(const PersistenceModule& m)
{
    std::ostringstream os;
    os << "laddermod module\n";
    os << "field " << m.field().name() << '\n';
    print_module_body(os, m);
    return os.str();
}

PersistenceModule load_module(const std::filesystem::path& path)
{
    return parse_module(read_file(path), path.string());
}

const NamedMorphism& MorphismDocument::morphism(const std::string& name) const
{
    for (const auto& m : morphisms)
        if (m.name == name) return m;
    throw std::invalid_argument("no morphism named '" + name + "'");
}

const PersistenceModule& MorphismDocument::module(const std::string& name) const
{
    for (const auto& m : modules)
        if (m.name == name) return m.module;
    throw std::invalid_argument("no module named '" + name + "'");
}

MorphismDocument parse_morphism_document(const std::string& text, const std::filesystem::path& base_dir,
                                         const std::string& source)
{
    Reader r(text, source);
    if (r.done()) r.fail(1, "empty morphism file");
    const Line& head = r.next();
    if (head.tokens != std::vector<std::string>{"laddermod", "morphisms"})
        r.fail(head.number, "expected header 'laddermod morphisms'");
    MorphismDocument doc;
    doc.field = default_field();
    if (!r.done() && r.peek().tokens[0] == "field") doc.field = parse_field_line(r, r.next());

    auto find_module = [&](const Line& l, const std::string& name) -> const PersistenceModule& {
        for (const auto& m : doc.modules)
            if (m.name == name) return m.module;
        r.fail(l.number, "unknown module '" + name + "'");
    };

    while (!r.done()) {
        const Line& l = r.next();
        const std::string& kw = l.tokens[0];
        if (kw == "delta") {
            expect_arity(r, l, 2);
            doc.delta = parse_index(r, l, l.tokens[1]);
            if (*doc.delta < 0) r.fail(l.number, "delta must be non-negative");
        } else if (kw == "pair") {
            expect_arity(r, l, 2);
            if (l.tokens[1] == "interleaving")
                doc.pair = PairKind::Interleaving;
            else if (l.tokens[1] == "invertible")
                doc.pair = PairKind::Invertible;
            else
                r.fail(l.number, "pair must be 'interleaving' or 'invertible'");
        } else if (kw == "module") {
            if (l.tokens.size() != 2 && !(l.tokens.size() == 4 && l.tokens[2] == "file"))
                r.fail(l.number, "expected 'module NAME' or 'module NAME file PATH'");
            const std::string& name = l.tokens[1];
            for (const auto& m : doc.modules)
                if (m.name == name) r.fail(l.number, "duplicate module '" + name + "'");
            if (l.tokens.size() == 4) {
                std::filesystem::path p = base_dir / l.tokens[3];
                PersistenceModule m = [&] {
                    try {
                        return load_module(p);
                    } catch (const ParseError&) {
                        throw;
                    } catch (const std::exception& e) {
                        r.fail(l.number, "module file '" + l.tokens[3] + "': " + e.what());
                    }
                }();
                if (!(m.field() == doc.field))
                    r.fail(l.number, "module file '" + l.tokens[3] + "' uses field " + m.field().name());
                doc.modules.push_back(NamedModule{name, std::move(m), l.tokens[3]});
            } else {
                doc.modules.push_back(NamedModule{name, read_module_body(r, doc.field, true, l.number), std::nullopt});
            }
        } else if (kw == "morphism") {
            expect_arity(r, l, 5);
            const PersistenceModule& dom = find_module(l, l.tokens[2]);
            PersistenceModule cod = shift(find_module(l, l.tokens[3]), parse_index(r, l, l.tokens[4]));
            Index lo = std::min(dom.origin(), cod.origin());
            Index hi = std::max(dom.last(), cod.last());
            std::map<Index, Matrix> comps;
            while (true) {
                if (r.done()) r.fail(l.number, "morphism block is missing 'end'");
                const Line& c = r.next();
                if (c.tokens[0] == "end") break;
                if (c.tokens[0] != "component") r.fail(c.number, "expected 'component' or 'end'");
                expect_arity(r, c, 3);
                Index t = parse_index(r, c, c.tokens[1]);
                if (t < lo || t > hi)
                    r.fail(c.number, "component index outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
                auto [rows, cols] = parse_shape(r, c, c.tokens[2]);
                if (rows != cod.dim(t) || cols != dom.dim(t))
                    r.fail(c.number, "component " + std::to_string(t) + " must be " + std::to_string(cod.dim(t)) +
                                         "x" + std::to_string(dom.dim(t)));
                if (comps.count(t)) r.fail(c.number, "duplicate component " + std::to_string(t));
                comps.emplace(t, read_matrix(r, doc.field, rows, cols));
            }
            std::vector<Matrix> cs;
            for (Index t = lo; t <= hi; ++t) {
                auto it = comps.find(t);
                if (it != comps.end())
                    cs.push_back(it->second);
                else if (cod.dim(t) == 0 || dom.dim(t) == 0)
                    cs.emplace_back(doc.field, cod.dim(t), dom.dim(t));
                else
                    r.fail(l.number, "missing component " + std::to_string(t));
            }
            LadderModule ladder(dom, cod, std::move(cs));
            if (auto v = validate_ladder(ladder)) r.fail(l.number, "morphism '" + l.tokens[1] + "': " + v->str());
            for (const auto& m : doc.morphisms)
                if (m.name == l.tokens[1]) r.fail(l.number, "duplicate morphism '" + l.tokens[1] + "'");
            doc.morphisms.push_back(NamedMorphism{l.tokens[1], l.tokens[2], l.tokens[3],
                                                  parse_index(r, l, l.tokens[4]), std::move(ladder)});
        } else {
            r.fail(l.number, "unexpected '" + kw + "'");
        }
    }
    return doc;
}

std::string print_morphism_document(const MorphismDocument& doc)
{
    std::ostringstream os;
    os << "laddermod morphisms\n";
    os << "field " << doc.field.name() << '\n';
    if (doc.delta) os << "delta " << *doc.delta << '\n';
    if (doc.pair) os << "pair " << (*doc.pair == PairKind::Interleaving ? "interleaving" : "invertible") << '\n';
    for (const auto& m : doc.modules) {
        if (m.file) {
            os << "module " << m.name << " file " << *m.file << '\n';
        } else {
            os << "module " << m.name << '\n';
            print_module_body(os, m.module);
            os << "end\n";
        }
    }
    for (const auto& m : doc.morphisms) {
        os << "morphism " << m.name << ' ' << m.dom << ' ' << m.cod << ' ' << m.shift << '\n';
        for (Index t = m.ladder.origin(); t <= m.ladder.last(); ++t) {
            Matrix c = m.ladder.component(t);
            os << "component " << t << ' ' << c.rows() << 'x' << c.cols() << '\n';
            print_matrix_rows(os, c);
        }
        os << "end\n";
    }
    return os.str();
}

MorphismDocument load_morphism_document(const std::filesystem::path& path)
{
    return parse_morphism_document(read_file(path), path.parent_path().empty() ? "." : path.parent_path(),
                                   path.string());
}

std::string barcode_listing(const Barcode& b)
{
    return b.str();
}

namespace {

std::vector<Interval> bar_copies(const Barcode& b)
{
    std::vector<Interval> out;
    for (const auto& [bar, mu] : b)
        for (std::size_t k = 0; k < mu; ++k) out.push_back(bar);
    return out;
}

}  // namespace

std::string barcode_text_diagram(const Barcode& b, Index lo, Index hi)
{
    std::vector<Interval> bars = bar_copies(b);
    std::size_t width = 0;
    for (const auto& bar : bars) width = std::max(width, bar.str().size());
    std::ostringstream os;
    for (const auto& bar : bars) {
        std::string label = bar.str();
        os << label << std::string(width - label.size() + 1, ' ') << '|';
        for (Index t = lo; t <= hi; ++t) os << (bar.contains(t) ? '=' : ' ');
        os << "|\n";
    }
    return os.str();
}

std::string barcode_svg(const Barcode& b, Index lo, Index hi, const std::string& title)
{
    std::vector<Interval> bars = bar_copies(b);
    const int cell = 40, row = 22, left = 70, top = title.empty() ? 20 : 40;
    const Index span = std::max<Index>(hi - lo + 1, 1);
    const int width = left + static_cast<int>(span) * cell + 20;
    const int height = top + static_cast<int>(bars.size()) * row + 40;
    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width << "\" height=\"" << height
       << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!title.empty())
        os << "<text x=\"" << left << "\" y=\"22\" font-family=\"sans-serif\" font-size=\"14\">" << title
           << "</text>\n";
    // one cell per index, bars drawn across the cells they contain
    for (std::size_t k = 0; k < bars.size(); ++k) {
        const Interval& bar = bars[k];
        int y = top + static_cast<int>(k) * row;
        int x0 = left + static_cast<int>(bar.a - lo) * cell + 4;
        int x1 = left + static_cast<int>(bar.b - lo + 1) * cell - 4;
        os << "<text x=\"4\" y=\"" << y + 14 << "\" font-family=\"monospace\" font-size=\"12\">" << bar.str()
           << "</text>\n";
        os << "<rect x=\"" << x0 << "\" y=\"" << y + 4 << "\" width=\"" << x1 - x0
           << "\" height=\"12\" fill=\"#3465a4\"/>\n";
    }
    int axis = top + static_cast<int>(bars.size()) * row + 8;
    os << "<line x1=\"" << left << "\" y1=\"" << axis << "\" x2=\"" << left + span * cell << "\" y2=\"" << axis
       << "\" stroke=\"black\"/>\n";
    for (Index t = lo; t <= hi; ++t)
        os << "<text x=\"" << left + static_cast<int>(t - lo) * cell + cell / 2 - 4 << "\" y=\"" << axis + 18
           << "\" font-family=\"monospace\" font-size=\"12\">" << t << "</text>\n";
    os << "</svg>\n";
    return os.str();
}

}  // namespace laddermod
