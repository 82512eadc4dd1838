#include "tckit/specfile.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <variant>

namespace tckit {

namespace {

struct Value;
using ValueList = std::vector<Value>;

struct Value {
    int line = 0, col = 0;
    std::variant<long long, std::string, ValueList> v; // string covers idents and quoted text
};

struct Tok {
    enum class Kind { Ident, Int, String, Punct, End } kind = Kind::End;
    std::string text;
    long long number = 0;
    int line = 1, col = 1;
};

class SpecLexer {
public:
    explicit SpecLexer(const std::string& s) : s_(s) { advance(); }

    const Tok& cur() const { return cur_; }

    void advance() {
        skip();
        cur_.line = line_;
        cur_.col = col_;
        if (i_ >= s_.size()) {
            cur_.kind = Tok::Kind::End;
            return;
        }
        char c = s_[i_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = i_;
            while (i_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_'))
                bump();
            cur_.kind = Tok::Kind::Ident;
            cur_.text = s_.substr(start, i_ - start);
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '-' && i_ + 1 < s_.size() &&
             std::isdigit(static_cast<unsigned char>(s_[i_ + 1])))) {
            std::size_t start = i_;
            if (c == '-') bump();
            while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) bump();
            cur_.kind = Tok::Kind::Int;
            cur_.number = std::stoll(s_.substr(start, i_ - start));
            return;
        }
        if (c == '"') {
            bump();
            std::string out;
            while (i_ < s_.size() && s_[i_] != '"') {
                if (s_[i_] == '\n') throw ParseError("unterminated string", line_, col_);
                out += s_[i_];
                bump();
            }
            if (i_ >= s_.size()) throw ParseError("unterminated string", line_, col_);
            bump();
            cur_.kind = Tok::Kind::String;
            cur_.text = out;
            return;
        }
        cur_.kind = Tok::Kind::Punct;
        cur_.text = std::string(1, c);
        bump();
    }

private:
    void bump() {
        if (s_[i_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++i_;
    }
    void skip() {
        while (i_ < s_.size()) {
            char c = s_[i_];
            if (std::isspace(static_cast<unsigned char>(c))) {
                bump();
            } else if (c == '#') {
                while (i_ < s_.size() && s_[i_] != '\n') bump();
            } else {
                break;
            }
        }
    }
    const std::string& s_;
    std::size_t i_ = 0;
    int line_ = 1, col_ = 1;
    Tok cur_;
};

void expect_punct(SpecLexer& lx, const char* p) {
    if (lx.cur().kind != Tok::Kind::Punct || lx.cur().text != p)
        throw ParseError(std::string("expected '") + p + "'", lx.cur().line, lx.cur().col);
    lx.advance();
}

Value parse_value(SpecLexer& lx) {
    Value v;
    v.line = lx.cur().line;
    v.col = lx.cur().col;
    switch (lx.cur().kind) {
    case Tok::Kind::Int:
        v.v = lx.cur().number;
        lx.advance();
        return v;
    case Tok::Kind::Ident:
    case Tok::Kind::String:
        v.v = lx.cur().text;
        lx.advance();
        return v;
    case Tok::Kind::Punct:
        if (lx.cur().text == "[") {
            lx.advance();
            ValueList list;
            if (!(lx.cur().kind == Tok::Kind::Punct && lx.cur().text == "]")) {
                list.push_back(parse_value(lx));
                while (lx.cur().kind == Tok::Kind::Punct && lx.cur().text == ",") {
                    lx.advance();
                    list.push_back(parse_value(lx));
                }
            }
            expect_punct(lx, "]");
            v.v = std::move(list);
            return v;
        }
        [[fallthrough]];
    default:
        throw ParseError("expected a value", lx.cur().line, lx.cur().col);
    }
}

struct Block {
    std::string name;
    int line = 0, col = 0;
    std::vector<std::pair<std::string, Value>> entries;

    const Value* find(const std::string& key) const {
        for (const auto& [k, val] : entries)
            if (k == key) return &val;
        return nullptr;
    }
    const Value& need(const std::string& key) const {
        const Value* v = find(key);
        if (!v) throw ParseError("missing key '" + key + "' in block '" + name + "'", line, col);
        return *v;
    }
};

long long as_int(const Value& v) {
    if (const auto* n = std::get_if<long long>(&v.v)) return *n;
    throw ParseError("expected an integer", v.line, v.col);
}

std::string as_text(const Value& v) {
    if (const auto* s = std::get_if<std::string>(&v.v)) return *s;
    throw ParseError("expected a name or string", v.line, v.col);
}

const ValueList& as_list(const Value& v) {
    if (const auto* l = std::get_if<ValueList>(&v.v)) return *l;
    throw ParseError("expected a list", v.line, v.col);
}

std::vector<std::string> as_text_list(const Value& v) {
    std::vector<std::string> out;
    for (const auto& item : as_list(v)) out.push_back(as_text(item));
    return out;
}

const RingContext& need_ring(const SpecFile& spec, const Block& b) {
    if (!spec.ring)
        throw ParseError("block '" + b.name + "' needs a preceding ring block", b.line, b.col);
    return *spec.ring;
}

void apply_ring(SpecFile& spec, const Block& b) {
    long long p = as_int(b.need("p"));
    if (p < 2) throw ParseError("p must be a prime >= 2", b.line, b.col);
    std::vector<std::string> names = as_text_list(b.need("vars"));
    std::vector<std::uint32_t> weights;
    if (const Value* w = b.find("weights"))
        for (const auto& item : as_list(*w)) {
            long long wi = as_int(item);
            if (wi < 1) throw ParseError("weights must be positive", item.line, item.col);
            weights.push_back(static_cast<std::uint32_t>(wi));
        }
    RingContext ctx;
    ctx.p = static_cast<std::uint32_t>(p);
    ctx.names = std::move(names);
    ctx.weights = weights.empty() ? std::vector<std::uint32_t>(ctx.names.size(), 1)
                                  : std::move(weights);
    if (const Value* q = b.find("quotient"))
        for (const auto& text : as_text_list(*q))
            ctx.relations.push_back(parse_polynomial(ctx, text));
    try {
        ctx.validate();
    } catch (const Error& err) {
        throw ParseError(err.what(), b.line, b.col);
    }
    spec.ring = std::move(ctx);
}

void apply_ideal(SpecFile& spec, const Block& b) {
    const RingContext& ctx = need_ring(spec, b);
    std::vector<Polynomial> gens;
    for (const auto& text : as_text_list(b.need("gens")))
        gens.push_back(parse_polynomial(ctx, text));
    spec.ideal = make_ideal(ctx, std::move(gens));
}

std::vector<ModuleElement> parse_columns(const RingContext& ctx, const Value& v) {
    std::vector<ModuleElement> out;
    for (const auto& column : as_list(v)) {
        ModuleElement el;
        for (const auto& entry : as_list(column))
            el.coords.push_back(parse_polynomial(ctx, as_text(entry)));
        out.push_back(std::move(el));
    }
    return out;
}

void apply_module(SpecFile& spec, const Block& b) {
    const RingContext& ctx = need_ring(spec, b);
    PresentedModule M;
    for (const auto& item : as_list(b.need("shifts")))
        M.ambient.shifts.push_back(as_int(item));
    if (const Value* rel = b.find("relations"))
        for (auto& el : parse_columns(ctx, *rel)) {
            if (el.rank() != M.ambient.rank())
                throw ParseError("relation column length does not match rank", rel->line,
                                 rel->col);
            M.relations.push_back(std::move(el.coords));
        }
    try {
        validate_module(ctx, M);
    } catch (const Error& err) {
        throw ParseError(err.what(), b.line, b.col);
    }
    spec.module = std::move(M);
}

void apply_submodule(SpecFile& spec, const Block& b) {
    const RingContext& ctx = need_ring(spec, b);
    if (!spec.module)
        throw ParseError("submodule block needs a preceding module block", b.line, b.col);
    SubmoduleSpec N;
    N.gens = parse_columns(ctx, b.need("gens"));
    for (const auto& g : N.gens)
        if (g.rank() != spec.module->ambient.rank())
            throw ParseError("generator length does not match module rank", b.line, b.col);
    spec.submodule = std::move(N);
}

void apply_formalsum(SpecFile& spec, const Block& b) {
    std::uint32_t p = spec.ring ? spec.ring->p : 2;
    if (const Value* pv = b.find("p")) p = static_cast<std::uint32_t>(as_int(*pv));
    long long arity = as_int(b.need("arity"));
    if (arity < 1) throw ParseError("arity must be positive", b.line, b.col);
    const Value& text = b.need("text");
    try {
        spec.formalsum =
            parse_formal_sum(p, static_cast<std::size_t>(arity), as_text(text));
    } catch (const Error& err) {
        throw ParseError(err.what(), text.line, text.col);
    }
}

} // namespace

SpecFile parse_specfile(const std::string& text) {
    SpecLexer lx(text);
    SpecFile spec;
    while (lx.cur().kind != Tok::Kind::End) {
        if (lx.cur().kind != Tok::Kind::Ident)
            throw ParseError("expected a block name", lx.cur().line, lx.cur().col);
        Block b;
        b.name = lx.cur().text;
        b.line = lx.cur().line;
        b.col = lx.cur().col;
        lx.advance();
        expect_punct(lx, "{");
        while (!(lx.cur().kind == Tok::Kind::Punct && lx.cur().text == "}")) {
            if (lx.cur().kind != Tok::Kind::Ident)
                throw ParseError("expected a key", lx.cur().line, lx.cur().col);
            std::string key = lx.cur().text;
            lx.advance();
            expect_punct(lx, "=");
            Value v = parse_value(lx);
            expect_punct(lx, ";");
            b.entries.emplace_back(std::move(key), std::move(v));
        }
        expect_punct(lx, "}");

        if (b.name == "ring") apply_ring(spec, b);
        else if (b.name == "ideal") apply_ideal(spec, b);
        else if (b.name == "module") apply_module(spec, b);
        else if (b.name == "submodule") apply_submodule(spec, b);
        else if (b.name == "formalsum") apply_formalsum(spec, b);
        else throw ParseError("unknown block '" + b.name + "'", b.line, b.col);
    }
    return spec;
}

SpecFile load_specfile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open input file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_specfile(ss.str());
}

} // namespace tckit
