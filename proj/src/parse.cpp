#include "qpb/parse.hpp"

#include <cctype>
#include <sstream>

namespace qpb {

namespace {

struct Token {
    enum Kind { integer, name, q, plus, minus, star, slash, caret, lparen, rparen, end };
    Kind kind;
    std::string text;
    size_t pos;
};

struct Lexer {
    std::string src;
    size_t i = 0;
    Token next() {
        while (i < src.size() && std::isspace(static_cast<unsigned char>(src[i]))) ++i;
        size_t start = i;
        if (i >= src.size()) return {Token::end, "", start};
        char c = src[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            Token t{Token::integer, src.substr(i, j - i), start};
            i = j;
            return t;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t j = i;
            while (j < src.size() &&
                   (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
                ++j;
            std::string word = src.substr(i, j - i);
            i = j;
            if (word == "q") return {Token::q, word, start};
            return {Token::name, word, start};
        }
        ++i;
        switch (c) {
            case '+': return {Token::plus, "+", start};
            case '-': return {Token::minus, "-", start};
            case '*': return {Token::star, "*", start};
            case '/': return {Token::slash, "/", start};
            case '^': return {Token::caret, "^", start};
            case '(': return {Token::lparen, "(", start};
            case ')': return {Token::rparen, ")", start};
        }
        throw parse_error(std::string("unexpected character '") + c + "'", start);
    }
};

// Value during parsing: a raw noncommutative expression. Scalars are raw
// terms with empty words.
struct PVal {
    RawExpr terms;
    static PVal scalar(const QScalar& c) { return {{{c, {}}}}; }
    bool is_scalar(QScalar& out) const {
        out = QScalar::zero();
        for (const auto& t : terms) {
            if (!t.word.empty()) return false;
            out = out + t.coeff;
        }
        return true;
    }
};

PVal pv_add(const PVal& a, const PVal& b, int sign) {
    PVal r = a;
    for (auto t : b.terms) {
        if (sign < 0) t.coeff = -t.coeff;
        r.terms.push_back(std::move(t));
    }
    return r;
}

PVal pv_mul(const PVal& a, const PVal& b) {
    PVal r;
    for (const auto& x : a.terms)
        for (const auto& y : b.terms) {
            RawTerm t;
            t.coeff = x.coeff * y.coeff;
            t.word = x.word;
            t.word.insert(t.word.end(), y.word.begin(), y.word.end());
            r.terms.push_back(std::move(t));
        }
    return r;
}

struct Parser {
    Lexer lex;
    Token cur;
    const Presentation* pres;  // null: scalar-only mode

    explicit Parser(std::string text, const Presentation* p) : lex{std::move(text)}, pres(p) {
        cur = lex.next();
    }
    void advance() { cur = lex.next(); }
    void expect(Token::Kind k, const char* what) {
        if (cur.kind != k) throw parse_error(std::string("expected ") + what, cur.pos);
        advance();
    }

    int parse_int() {
        int sign = 1;
        if (cur.kind == Token::minus) {
            sign = -1;
            advance();
        }
        if (cur.kind != Token::integer) throw parse_error("expected integer", cur.pos);
        int v = std::stoi(cur.text);
        advance();
        return sign * v;
    }

    PVal parse_atom() {
        switch (cur.kind) {
            case Token::integer: {
                long v = std::stol(cur.text);
                advance();
                return PVal::scalar(QScalar(v));
            }
            case Token::q: {
                advance();
                int e = 1;
                if (cur.kind == Token::caret) {
                    advance();
                    e = parse_int();
                }
                return PVal::scalar(QScalar::q_power(e));
            }
            case Token::name: {
                if (!pres) throw parse_error("generator in scalar context", cur.pos);
                auto g = pres->find_generator(cur.text);
                if (!g) throw parse_error("unknown generator '" + cur.text + "'", cur.pos);
                advance();
                int e = 1;
                if (cur.kind == Token::caret) {
                    advance();
                    e = parse_int();
                }
                if (e < 0 && !pres->gen(*g).invertible)
                    throw parse_error("negative power of non-invertible generator", cur.pos);
                PVal v;
                RawTerm t{QScalar::one(), {}};
                if (e != 0) t.word.push_back({*g, e});
                v.terms.push_back(std::move(t));
                return v;
            }
            case Token::lparen: {
                advance();
                PVal v = parse_sum();
                expect(Token::rparen, "')'");
                if (cur.kind == Token::caret) {
                    size_t p = cur.pos;
                    advance();
                    int e = parse_int();
                    QScalar s;
                    if (v.is_scalar(s)) return PVal::scalar(s.pow(e));
                    if (e < 0) throw parse_error("negative power of a non-scalar", p);
                    PVal acc = PVal::scalar(QScalar::one());
                    for (int i = 0; i < e; ++i) acc = pv_mul(acc, v);
                    return acc;
                }
                return v;
            }
            default:
                throw parse_error("expected a factor", cur.pos);
        }
    }

    PVal parse_term() {
        int lead_sign = 1;
        while (cur.kind == Token::minus || cur.kind == Token::plus) {
            if (cur.kind == Token::minus) lead_sign = -lead_sign;
            advance();
        }
        PVal v = parse_atom();
        while (cur.kind == Token::star || cur.kind == Token::slash) {
            bool div = cur.kind == Token::slash;
            size_t p = cur.pos;
            advance();
            PVal rhs = parse_atom();
            if (div) {
                QScalar s;
                if (!rhs.is_scalar(s) || s.is_zero())
                    throw parse_error("division only by nonzero scalars", p);
                rhs = PVal::scalar(s.inverse());
            }
            v = pv_mul(v, rhs);
        }
        if (lead_sign < 0)
            for (auto& t : v.terms) t.coeff = -t.coeff;
        return v;
    }

    PVal parse_sum() {
        PVal v = parse_term();
        while (cur.kind == Token::plus || cur.kind == Token::minus) {
            int sign = cur.kind == Token::plus ? 1 : -1;
            advance();
            PVal rhs = parse_term();
            v = pv_add(v, rhs, sign);
        }
        return v;
    }

    PVal parse_all() {
        PVal v = parse_sum();
        if (cur.kind != Token::end) throw parse_error("trailing input", cur.pos);
        return v;
    }
};

}  // namespace

QScalar parse_scalar(const std::string& text) {
    Parser p(text, nullptr);
    PVal v = p.parse_all();
    QScalar s;
    if (!v.is_scalar(s)) throw parse_error("expected a scalar expression", 0);
    return s;
}

RawExpr parse_raw_expr(const std::string& text, const Presentation& pres) {
    Parser p(text, &pres);
    return p.parse_all().terms;
}

Element parse_element(const std::string& text, const Presentation& pres) {
    return pres.normal_form(parse_raw_expr(text, pres));
}

std::string print_scalar(const QScalar& c) { return c.to_string(); }

std::string print_monomial(const Monomial& m, const Presentation& p) {
    if (m.is_unit()) return "1";
    std::string out;
    for (const auto& f : m.factors()) {
        if (!out.empty()) out += "*";
        out += p.gen(f.gen).name;
        if (f.exp != 1) out += "^" + std::to_string(f.exp);
    }
    return out;
}

namespace {

// true when the printed scalar carries a top-level + or - (denominator 1,
// several numerator terms); such coefficients need parentheses in products
bool scalar_is_sum(const QScalar& c) {
    if (!(c.den().degree() == 0 && c.den().coeff(0) == 1)) return false;
    int terms = 0;
    for (int d = 0; d <= c.num().degree(); ++d)
        if (c.num().coeff(d) != 0) ++terms;
    return terms > 1;
}

std::string term_string(const Monomial& m, const QScalar& c, const Presentation& p) {
    std::string s = c.to_string();
    if (m.is_unit()) return scalar_is_sum(c) ? "(" + s + ")" : s;
    if (c.is_one()) return print_monomial(m, p);
    if ((-c).is_one()) return "-" + print_monomial(m, p);
    if (scalar_is_sum(c)) s = "(" + s + ")";
    return s + "*" + print_monomial(m, p);
}

}  // namespace

std::string print_element(const Element& e, const Presentation& p) {
    if (e.is_zero()) return "0";
    std::string out;
    for (const auto& [m, c] : e.terms()) {
        bool neg = c.num().leading() < 0;
        std::string t = term_string(m, neg ? -c : c, p);
        if (out.empty()) {
            out = neg ? "-" + t : t;
        } else {
            out += (neg ? " - " : " + ") + t;
        }
    }
    return out;
}

std::string print_tensor(const TensorElement& t, std::span<const Presentation* const> legs) {
    if (t.is_zero()) return "0";
    std::string out;
    for (const auto& [lm, c] : t.terms()) {
        if (!out.empty()) out += " + ";
        if (!c.is_one()) {
            std::string v = c.to_string();
            if (scalar_is_sum(c)) v = "(" + v + ")";
            out += v + "*";
        }
        for (size_t i = 0; i < lm.size(); ++i) {
            if (i > 0) out += " (x) ";
            out += print_monomial(lm[i], *legs[i]);
        }
    }
    return out;
}

std::string write_presentation(const Presentation& p) {
    std::ostringstream os;
    for (GenIndex g = 0; g < p.size(); ++g) {
        const Generator& gen = p.gen(g);
        os << "gen " << gen.name;
        if (gen.invertible) os << " inv";
        if (gen.weight != 1) os << " weight " << gen.weight;
        if (gen.matrix_pos) os << " pos " << gen.matrix_pos->first << " " << gen.matrix_pos->second;
        os << "\n";
    }
    if (!p.graded) os << "ungraded\n";
    for (const auto& [k, r] : p.pair_rules()) {
        os << "rule " << p.gen(r.hi).name;
        if (r.hi_sign < 0) os << "^-1";
        os << "*" << p.gen(r.lo).name;
        if (r.lo_sign < 0) os << "^-1";
        os << " = " << print_element(r.rhs, p) << "\n";
    }
    for (const auto& sr : p.subst_rules())
        os << "subst " << print_monomial(sr.pattern, p) << " = " << print_element(sr.rhs, p)
           << "\n";
    return os.str();
}

Presentation read_presentation(const std::string& text) {
    Presentation p;
    std::istringstream is(text);
    std::string line;
    // first pass installs generators so rules can refer forward
    std::vector<std::string> rule_lines;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head) || head[0] == '#') continue;
        if (head == "gen") {
            Generator g;
            if (!(ls >> g.name)) throw qpb_error("gen line missing name");
            std::string opt;
            while (ls >> opt) {
                if (opt == "inv") {
                    g.invertible = true;
                } else if (opt == "weight") {
                    ls >> g.weight;
                } else if (opt == "pos") {
                    int i, j;
                    ls >> i >> j;
                    g.matrix_pos = {i, j};
                } else {
                    throw qpb_error("unknown gen option " + opt);
                }
            }
            p.add_generator(std::move(g));
        } else if (head == "ungraded") {
            p.graded = false;
        } else if (head == "rule" || head == "subst") {
            rule_lines.push_back(line);
        } else {
            throw qpb_error("unknown directive '" + head + "' on line " +
                            std::to_string(lineno));
        }
    }
    for (const auto& rl : rule_lines) {
        std::istringstream ls(rl);
        std::string head;
        ls >> head;
        std::string rest;
        std::getline(ls, rest);
        size_t eq = rest.find('=');
        if (eq == std::string::npos) throw qpb_error("rule line missing '='");
        std::string lhs = rest.substr(0, eq);
        std::string rhs = rest.substr(eq + 1);
        RawExpr lraw = parse_raw_expr(lhs, p);
        if (lraw.size() != 1 || !lraw[0].coeff.is_one())
            throw qpb_error("rule left side must be a plain word");
        Element rhs_el = p.normal_form(parse_raw_expr(rhs, p));
        if (head == "rule") {
            const Word& w = lraw[0].word;
            if (w.size() != 2 || std::abs(w[0].exp) != 1 || std::abs(w[1].exp) != 1)
                throw qpb_error("rule left side must be a two-letter word");
            p.add_pair_rule(w[0].gen, w[0].exp, w[1].gen, w[1].exp, rhs_el);
        } else {
            Word w = lraw[0].word;
            p.add_subst_rule(Monomial::from_sorted(w), rhs_el);
        }
    }
    return p;
}

}  // namespace qpb
