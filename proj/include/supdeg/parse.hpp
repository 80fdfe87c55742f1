#pragma once

#include <cctype>
#include <sstream>
#include <string>

#include "supdeg/curve.hpp"

namespace supdeg {

struct parse_error : std::runtime_error {
    int line;
    int column;
    parse_error(int l, int c, const std::string &msg)
        : std::runtime_error("line " + std::to_string(l) + ", column " + std::to_string(c) + ": " + msg),
          line(l),
          column(c) {}
};

namespace detail {

// Tokenizer over a single logical line; whitespace-insensitive.  The
// column offset locates a substring inside its original line.
class Scanner {
public:
    Scanner(std::string text, int line, int column_offset = 0)
        : s_(std::move(text)), line_(line), off_(column_offset) {}

    void skip_ws() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool done() {
        skip_ws();
        return i_ >= s_.size();
    }
    int column() const { return static_cast<int>(i_) + off_ + 1; }
    char peek() {
        skip_ws();
        return i_ < s_.size() ? s_[i_] : '\0';
    }
    bool accept(char c) {
        skip_ws();
        if (i_ < s_.size() && s_[i_] == c) {
            ++i_;
            return true;
        }
        return false;
    }
    void expect(char c, const std::string &what) {
        if (!accept(c)) fail("expected '" + std::string(1, c) + "' " + what);
    }
    bool accept_word(const std::string &w) {
        skip_ws();
        if (s_.compare(i_, w.size(), w) == 0) {
            i_ += w.size();
            return true;
        }
        return false;
    }
    Int integer() {
        skip_ws();
        size_t start = i_;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
        if (i_ == start) fail("expected an integer");
        return Int(s_.substr(start, i_ - start));
    }
    // rational := ["-"] integer ["/" positive-integer]
    Rat rational() {
        bool neg = accept('-');
        Int n = integer();
        Int d(1);
        if (accept('/')) {
            d = integer();
            if (d == 0) fail("zero denominator");
        }
        Rat r = rat(neg ? Int(-n) : n, d);
        return r;
    }
    [[noreturn]] void fail(const std::string &msg) { throw parse_error(line_, column(), msg); }

private:
    std::string s_;
    size_t i_ = 0;
    int line_;
    int off_ = 0;
};

// zpoly := signed sum of integer-coefficient monomials in z
inline Cyc parse_zpoly(Scanner &sc, const Ctx &ctx) {
    Cyc acc = Cyc::zero(ctx->field());
    bool first = true;
    while (true) {
        bool neg = false;
        if (first) {
            neg = sc.accept('-');
        } else {
            if (sc.accept('+')) {
                neg = false;
            } else if (sc.accept('-')) {
                neg = true;
            } else {
                break;
            }
        }
        first = false;
        Int coef(1);
        bool have_coef = false;
        if (std::isdigit(static_cast<unsigned char>(sc.peek()))) {
            coef = sc.integer();
            have_coef = true;
        }
        long power = 0;
        if (sc.accept('*')) {
            if (!sc.accept_word("z")) sc.fail("expected 'z' after '*'");
            power = 1;
            if (sc.accept('^')) power = sc.integer().get_si();
        } else if (sc.accept_word("z")) {
            power = 1;
            if (sc.accept('^')) power = sc.integer().get_si();
        } else if (!have_coef) {
            sc.fail("expected a zpoly term");
        }
        Cyc term = Cyc::zeta_pow(ctx->field(), power).scaled(rat(neg ? Int(-coef) : coef, Int(1)));
        acc = acc + term;
    }
    return acc;
}

// mono := "pi^(" rational ")"
inline Rat parse_mono(Scanner &sc) {
    if (!sc.accept_word("pi")) sc.fail("expected 'pi'");
    sc.expect('^', "after pi");
    sc.expect('(', "after pi^");
    Rat e = sc.rational();
    sc.expect(')', "closing the exponent");
    return e;
}

// term := coeff | coeff "*" mono | mono | "-" term
inline Pux parse_term(Scanner &sc, const Ctx &ctx) {
    if (sc.accept('-')) return -parse_term(sc, ctx);
    char c = sc.peek();
    if (c == 'p') {
        Rat e = parse_mono(sc);
        return Pux::pi_power(ctx, e);
    }
    Cyc coeff = Cyc::zero(ctx->field());
    if (c == '(') {
        sc.expect('(', "opening a coefficient");
        coeff = parse_zpoly(sc, ctx);
        sc.expect(')', "closing a coefficient");
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
        coeff = Cyc::from_rational(ctx->field(), sc.rational());
    } else {
        sc.fail("expected a term");
    }
    if (sc.accept('*')) {
        Rat e = parse_mono(sc);
        return Pux::monomial(ctx, coeff, e);
    }
    return Pux::monomial(ctx, coeff, Rat(0));
}

}  // namespace detail

// puiseux := term ("+" term)*
inline Pux parse_puiseux(const std::string &text, const Ctx &ctx, int line = 1,
                         int column_offset = 0) {
    detail::Scanner sc(text, line, column_offset);
    try {
        Pux acc = detail::parse_term(sc, ctx);
        while (true) {
            if (sc.accept('+')) {
                acc = acc + detail::parse_term(sc, ctx);
            } else if (sc.peek() == '-') {
                // allow "a - b" as sugar for "a + -b"
                acc = acc + detail::parse_term(sc, ctx);
            } else {
                break;
            }
        }
        if (!sc.done()) sc.fail("trailing input after expression");
        return acc;
    } catch (const context_error &e) {
        throw parse_error(line, sc.column(), e.what());
    }
}

// Curve file format, line oriented:
//   curve "<name>"
//   q = <prime>
//   residue_char = <p>
//   ram_index = <N>
//   cyclotomic_order = <M>
//   leading = <puiseux>
//   root <puiseux> mult <k>
// '#' starts a comment.
inline CurveSpec parse_curve(const std::string &document) {
    std::istringstream in(document);
    std::string raw;
    int lineno = 0;

    std::string name;
    std::optional<long> q, p, N, M;
    std::string leading_text;
    int leading_line = 0;
    int leading_col = 0;
    std::vector<std::tuple<std::string, unsigned, int, int>> root_texts;

    bool saw_curve = false;
    while (std::getline(in, raw)) {
        ++lineno;
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw = raw.substr(0, hash);
        detail::Scanner sc(raw, lineno);
        if (sc.done()) continue;
        if (!saw_curve) {
            if (!sc.accept_word("curve")) sc.fail("expected 'curve \"<name>\"' header");
            auto q1 = raw.find('"');
            auto q2 = raw.rfind('"');
            if (q1 == std::string::npos || q2 == q1) sc.fail("curve name must be quoted");
            name = raw.substr(q1 + 1, q2 - q1 - 1);
            saw_curve = true;
            continue;
        }
        if (sc.accept_word("root")) {
            // the expression runs until the trailing "mult <k>"
            std::string rest = raw.substr(raw.find("root") + 4);
            auto mpos = rest.rfind("mult");
            if (mpos == std::string::npos) sc.fail("root line needs a trailing 'mult <k>'");
            size_t expr_off = raw.find("root") + 4;
            std::string expr = rest.substr(0, mpos);
            detail::Scanner msc(rest.substr(mpos + 4), lineno, static_cast<int>(expr_off + mpos + 4));
            Int mult = msc.integer();
            if (!msc.done()) msc.fail("trailing input after multiplicity");
            if (mult <= 0) msc.fail("multiplicity must be positive");
            root_texts.emplace_back(expr, static_cast<unsigned>(mult.get_ui()), lineno,
                                    static_cast<int>(expr_off));
            continue;
        }
        auto keyval = [&](const char *key) -> std::optional<long> {
            detail::Scanner k(raw, lineno);
            if (!k.accept_word(key)) return std::nullopt;
            k.expect('=', "after key");
            Int v = k.integer();
            if (!k.done()) k.fail("trailing input after value");
            return v.get_si();
        };
        if (auto v = keyval("q")) {
            q = v;
            continue;
        }
        if (auto v = keyval("residue_char")) {
            p = v;
            continue;
        }
        if (auto v = keyval("ram_index")) {
            N = v;
            continue;
        }
        if (auto v = keyval("cyclotomic_order")) {
            M = v;
            continue;
        }
        if (sc.accept_word("leading")) {
            sc.expect('=', "after 'leading'");
            leading_text = raw.substr(raw.find('=') + 1);
            leading_line = lineno;
            leading_col = static_cast<int>(raw.find('=') + 1);
            continue;
        }
        sc.fail("unknown field");
    }
    if (!saw_curve) throw parse_error(1, 1, "missing 'curve' header");
    if (!q) throw parse_error(lineno, 1, "missing field q");
    if (!p) throw parse_error(lineno, 1, "missing field residue_char");
    if (!N) throw parse_error(lineno, 1, "missing field ram_index");
    if (!M) throw parse_error(lineno, 1, "missing field cyclotomic_order");
    if (leading_text.empty()) throw parse_error(lineno, 1, "missing field leading");
    if (*N <= 0 || *M <= 0 || *q <= 0 || *p < 0) throw parse_error(lineno, 1, "fields must be positive");
    if (*M % *N != 0) throw parse_error(lineno, 1, "cyclotomic_order must be a multiple of ram_index");

    CurveSpec c;
    c.name = name;
    c.q = static_cast<unsigned>(*q);
    c.context = make_context(static_cast<unsigned>(*p), static_cast<unsigned>(*N),
                             static_cast<unsigned>(*M));
    c.leading = parse_puiseux(leading_text, c.context, leading_line, leading_col);
    for (const auto &[expr, mult, line, col] : root_texts) {
        RootEntry r;
        r.value = parse_puiseux(expr, c.context, line, col);
        r.multiplicity = mult;
        c.roots.push_back(std::move(r));
    }
    c.sort_roots();
    return c;
}

// Bit-exact rendering: keys in fixed order, roots sorted by
// (valuation, canonical term order).
inline std::string render_curve(const CurveSpec &c) {
    CurveSpec sorted = c;
    sorted.sort_roots();
    std::ostringstream os;
    os << "curve \"" << c.name << "\"\n";
    os << "q = " << c.q << "\n";
    os << "residue_char = " << c.context->residue_char() << "\n";
    os << "ram_index = " << c.context->ram_index() << "\n";
    os << "cyclotomic_order = " << c.context->cyclotomic_order() << "\n";
    os << "leading = " << c.leading.str() << "\n";
    for (const auto &r : sorted.roots) os << "root " << r.value.str() << " mult " << r.multiplicity << "\n";
    return os.str();
}

}  // namespace supdeg
