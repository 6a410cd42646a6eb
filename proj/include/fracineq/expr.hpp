#pragma once

// Small arithmetic expression language: parse, print, evaluate at reals and
// at dual numbers. Grammar (EBNF in docs/grammar.md):
//
//   expr      := term { ('+'|'-') term }
//   term      := factor { ('*'|'/') factor }
//   factor    := unary [ '^' factor ]                 (right associative)
//   unary     := '-' unary | primary
//   primary   := number | ident | call | '(' expr ')' | piecewise
//   call      := ('exp'|'log'|'abs'|'sqrt') '(' expr ')'
//              | ('min'|'max') '(' expr ',' expr ')'
//   piecewise := 'piecewise' '(' branch { ',' branch } ')'
//   branch    := '(' number ',' number ')' ':' expr
//
// Identifiers: `x` always; `y` when parsed as a two-variable map; extra
// names when parsed as a parametric family template. Piecewise guards test
// the value of `x` and are closed-left, open-right; the overall upper
// endpoint (largest `hi`) is included in the last covering branch so the
// declared domain is fully evaluable.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fracineq/common.hpp"
#include "fracineq/dual.hpp"

namespace fracineq {

enum class UnaryOp { Neg, Exp, Log, Abs, Sqrt };
enum class BinaryOp { Add, Sub, Mul, Div, Pow, Min, Max };

/// Result of eval_dual: value, d/dx, and whether a subgradient choice was
/// made anywhere along the way.
struct DualValue {
    double value = 0.0;
    double deriv = 0.0;
    bool kink = false;
};

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Immutable expression node. Construction goes through the static
/// factories (or parse()); evaluation is pure and thread-safe.
class Expr {
public:
    enum class Kind { Constant, Variable, Unary, Binary, Piecewise };

    struct Branch {
        double lo, hi;  // guard on x: [lo, hi)
        ExprPtr body;
    };

    // -- factories ---------------------------------------------------------
    static ExprPtr constant(double c) {
        auto e = std::make_shared<Expr>(Kind::Constant);
        e->const_ = c;
        return e;
    }
    static ExprPtr variable(std::string name) {
        auto e = std::make_shared<Expr>(Kind::Variable);
        e->name_ = std::move(name);
        return e;
    }
    static ExprPtr unary(UnaryOp op, ExprPtr a) {
        auto e = std::make_shared<Expr>(Kind::Unary);
        e->uop_ = op;
        e->kids_ = {std::move(a)};
        return e;
    }
    static ExprPtr binary(BinaryOp op, ExprPtr a, ExprPtr b) {
        auto e = std::make_shared<Expr>(Kind::Binary);
        e->bop_ = op;
        e->kids_ = {std::move(a), std::move(b)};
        return e;
    }
    static ExprPtr piecewise(std::vector<Branch> branches) {
        auto e = std::make_shared<Expr>(Kind::Piecewise);
        e->branches_ = std::move(branches);
        return e;
    }

    explicit Expr(Kind k) : kind_(k) {}

    Kind kind() const { return kind_; }
    double constant_value() const { return const_; }
    const std::string& variable_name() const { return name_; }
    UnaryOp unary_op() const { return uop_; }
    BinaryOp binary_op() const { return bop_; }
    const std::vector<ExprPtr>& children() const { return kids_; }
    const std::vector<Branch>& branches() const { return branches_; }

private:
    Kind kind_;
    double const_ = 0.0;
    std::string name_;
    UnaryOp uop_ = UnaryOp::Neg;
    BinaryOp bop_ = BinaryOp::Add;
    std::vector<ExprPtr> kids_;
    std::vector<Branch> branches_;
};

namespace detail {

// Generic evaluation over double or Dual. x and y live in fixed slots so
// the hot path never touches a map; `extra` covers family parameters.
template <class T>
struct Env {
    T x{};
    T y{};
    bool has_x = false;
    bool has_y = false;
    const std::map<std::string, T>* extra = nullptr;
    double x_guard = 0.0;  // value tested by piecewise guards
};

inline double value_of(double v) { return v; }
inline double value_of(const Dual& v) { return v.v; }

inline void check_finite(double v, const char* op) {
    if (!std::isfinite(v)) throw DomainError(std::string("non-finite result in ") + op);
}
inline void check_finite(const Dual& v, const char* op) { check_finite(v.v, op); }

inline double apply_unary(UnaryOp op, double a) {
    switch (op) {
        case UnaryOp::Neg: return -a;
        case UnaryOp::Exp: return std::exp(a);
        case UnaryOp::Log:
            if (!(a > 0.0)) throw DomainError("log of non-positive value");
            return std::log(a);
        case UnaryOp::Abs: return std::abs(a);
        case UnaryOp::Sqrt:
            if (a < 0.0) throw DomainError("sqrt of negative value");
            return std::sqrt(a);
    }
    throw DomainError("bad unary op");
}

inline Dual apply_unary(UnaryOp op, const Dual& a) {
    switch (op) {
        case UnaryOp::Neg: return -a;
        case UnaryOp::Exp: return dexp(a);
        case UnaryOp::Log: return dlog(a);
        case UnaryOp::Abs: return dabs(a);
        case UnaryOp::Sqrt: return dsqrt(a);
    }
    throw DomainError("bad unary op");
}

inline double apply_binary(BinaryOp op, double a, double b) {
    switch (op) {
        case BinaryOp::Add: return a + b;
        case BinaryOp::Sub: return a - b;
        case BinaryOp::Mul: return a * b;
        case BinaryOp::Div:
            if (b == 0.0) throw DomainError("division by zero");
            return a / b;
        case BinaryOp::Pow: return rpow(a, b);
        case BinaryOp::Min: return b < a ? b : a;
        case BinaryOp::Max: return b > a ? b : a;
    }
    throw DomainError("bad binary op");
}

inline Dual apply_binary(BinaryOp op, const Dual& a, const Dual& b) {
    switch (op) {
        case BinaryOp::Add: return a + b;
        case BinaryOp::Sub: return a - b;
        case BinaryOp::Mul: return a * b;
        case BinaryOp::Div: return a / b;
        case BinaryOp::Pow: return dpow(a, b);
        case BinaryOp::Min: return dmin(a, b);
        case BinaryOp::Max: return dmax(a, b);
    }
    throw DomainError("bad binary op");
}

template <class T>
T eval_node(const Expr& e, const Env<T>& env) {
    switch (e.kind()) {
        case Expr::Kind::Constant:
            if constexpr (std::is_same_v<T, Dual>)
                return Dual::constant(e.constant_value());
            else
                return e.constant_value();
        case Expr::Kind::Variable: {
            const std::string& name = e.variable_name();
            if (env.has_x && name.size() == 1 && name[0] == 'x') return env.x;
            if (env.has_y && name.size() == 1 && name[0] == 'y') return env.y;
            if (env.extra) {
                auto it = env.extra->find(name);
                if (it != env.extra->end()) return it->second;
            }
            throw DomainError("unbound variable '" + name + "'");
        }
        case Expr::Kind::Unary: {
            T a = eval_node(*e.children()[0], env);
            T r = apply_unary(e.unary_op(), a);
            check_finite(r, "unary op");
            return r;
        }
        case Expr::Kind::Binary: {
            T a = eval_node(*e.children()[0], env);
            T b = eval_node(*e.children()[1], env);
            T r = apply_binary(e.binary_op(), a, b);
            check_finite(r, "binary op");
            return r;
        }
        case Expr::Kind::Piecewise: {
            double g = env.x_guard;
            const auto& brs = e.branches();
            double bottom = brs.front().lo, top = brs.front().hi;
            for (const auto& br : brs) {
                bottom = std::min(bottom, br.lo);
                top = std::max(top, br.hi);
            }
            for (const auto& br : brs)
                if (g >= br.lo && g < br.hi) {
                    T r = eval_node(*br.body, env);
                    if constexpr (std::is_same_v<T, Dual>) {
                        if (g == br.lo && br.lo != bottom) r.kink = true;  // interior breakpoint
                    }
                    return r;
                }
            // close the top endpoint of the declared domain
            if (g == top) {
                for (const auto& br : brs)
                    if (br.hi == top) return eval_node(*br.body, env);
            }
            throw DomainError("piecewise gap at x=" + fmt_shortest(g));
        }
    }
    throw DomainError("bad node kind");
}

} // namespace detail

// ---------------------------------------------------------------------------
// Evaluation entry points

/// f(x) for a single-variable expression.
inline double eval(const Expr& e, double x) {
    detail::Env<double> env;
    env.x = x;
    env.has_x = true;
    env.x_guard = x;
    return detail::eval_node(e, env);
}

/// eta(y, x) for a two-variable map.
inline double eval2(const Expr& e, double y, double x) {
    detail::Env<double> env;
    env.x = x;
    env.y = y;
    env.has_x = env.has_y = true;
    env.x_guard = x;
    return detail::eval_node(e, env);
}

/// Value and d/dx at x.
inline DualValue eval_dual(const Expr& e, double x) {
    detail::Env<Dual> env;
    env.x = Dual::seed(x);
    env.has_x = true;
    env.x_guard = x;
    Dual r = detail::eval_node(e, env);
    return {r.v, r.d, r.kink};
}

/// Evaluation with arbitrary extra bindings (family templates in tests).
inline double eval_with(const Expr& e, double x, const std::map<std::string, double>& extra) {
    detail::Env<double> env;
    env.x = x;
    env.has_x = true;
    env.extra = &extra;
    env.x_guard = x;
    return detail::eval_node(e, env);
}

// ---------------------------------------------------------------------------
// Printing

namespace detail {

inline const char* unary_name(UnaryOp op) {
    switch (op) {
        case UnaryOp::Neg: return "-";
        case UnaryOp::Exp: return "exp";
        case UnaryOp::Log: return "log";
        case UnaryOp::Abs: return "abs";
        case UnaryOp::Sqrt: return "sqrt";
    }
    return "?";
}

inline void print_node(const Expr& e, std::string& out) {
    switch (e.kind()) {
        case Expr::Kind::Constant: {
            double c = e.constant_value();
            if (c < 0.0 || (c == 0.0 && std::signbit(c))) {
                out += "(-";
                out += fmt_shortest(-c);
                out += ')';
            } else {
                out += fmt_shortest(c);
            }
            return;
        }
        case Expr::Kind::Variable:
            out += e.variable_name();
            return;
        case Expr::Kind::Unary:
            if (e.unary_op() == UnaryOp::Neg) {
                out += "(-";
                print_node(*e.children()[0], out);
                out += ')';
            } else {
                out += unary_name(e.unary_op());
                out += '(';
                print_node(*e.children()[0], out);
                out += ')';
            }
            return;
        case Expr::Kind::Binary: {
            BinaryOp op = e.binary_op();
            if (op == BinaryOp::Min || op == BinaryOp::Max) {
                out += (op == BinaryOp::Min) ? "min(" : "max(";
                print_node(*e.children()[0], out);
                out += ", ";
                print_node(*e.children()[1], out);
                out += ')';
                return;
            }
            const char* sym = op == BinaryOp::Add ? " + "
                            : op == BinaryOp::Sub ? " - "
                            : op == BinaryOp::Mul ? " * "
                            : op == BinaryOp::Div ? " / "
                                                  : "^";
            out += '(';
            print_node(*e.children()[0], out);
            out += sym;
            print_node(*e.children()[1], out);
            out += ')';
            return;
        }
        case Expr::Kind::Piecewise: {
            out += "piecewise(";
            bool first = true;
            for (const auto& br : e.branches()) {
                if (!first) out += ", ";
                first = false;
                out += '(';
                out += fmt_shortest(br.lo);
                out += ", ";
                out += fmt_shortest(br.hi);
                out += "): ";
                print_node(*br.body, out);
            }
            out += ')';
            return;
        }
    }
}

} // namespace detail

/// Fully parenthesized text form; parse(to_string(e)) evaluates identically
/// to e (constants print in shortest round-trip form).
inline std::string to_string(const Expr& e) {
    std::string out;
    detail::print_node(e, out);
    return out;
}

// ---------------------------------------------------------------------------
// Parser

namespace detail {

class Parser {
public:
    Parser(std::string_view text, std::vector<std::string> idents)
        : text_(text), idents_(std::move(idents)) {}

    ExprPtr parse() {
        skip_ws();
        ExprPtr e = parse_expr();
        skip_ws();
        if (pos_ != text_.size())
            fail("unexpected trailing input", {"end of input", "operator"});
        return e;
    }

private:
    std::string_view text_;
    std::vector<std::string> idents_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg, std::vector<std::string> expected) const {
        // 1-based byte offsets in diagnostics.
        throw ParseError(msg + " at offset " + std::to_string(pos_ + 1), pos_ + 1,
                         std::move(expected));
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool peek_char(char c) {
        skip_ws();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    bool accept_char(char c) {
        if (peek_char(c)) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect_char(char c, const char* what) {
        if (!accept_char(c)) fail(std::string("expected '") + c + "'", {what});
    }

    ExprPtr parse_expr() {
        ExprPtr lhs = parse_term();
        for (;;) {
            if (accept_char('+'))
                lhs = Expr::binary(BinaryOp::Add, lhs, parse_term());
            else if (accept_char('-'))
                lhs = Expr::binary(BinaryOp::Sub, lhs, parse_term());
            else
                return lhs;
        }
    }

    ExprPtr parse_term() {
        ExprPtr lhs = parse_factor();
        for (;;) {
            if (accept_char('*'))
                lhs = Expr::binary(BinaryOp::Mul, lhs, parse_factor());
            else if (accept_char('/'))
                lhs = Expr::binary(BinaryOp::Div, lhs, parse_factor());
            else
                return lhs;
        }
    }

    ExprPtr parse_factor() {
        ExprPtr base = parse_unary();
        if (accept_char('^')) return Expr::binary(BinaryOp::Pow, base, parse_factor());
        return base;
    }

    ExprPtr parse_unary() {
        if (accept_char('-')) return Expr::unary(UnaryOp::Neg, parse_unary());
        return parse_primary();
    }

    double parse_number() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
            ++pos_;
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t mark = pos_++;
            if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
            if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                    ++pos_;
            } else {
                pos_ = mark;  // 'e' starts an identifier, not an exponent
            }
        }
        double value = 0.0;
        auto res = std::from_chars(text_.data() + start, text_.data() + pos_, value);
        if (res.ec != std::errc() || res.ptr != text_.data() + pos_) {
            pos_ = start;
            fail("malformed number", {"number"});
        }
        return value;
    }

    std::string parse_ident() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        return std::string(text_.substr(start, pos_ - start));
    }

    double parse_signed_number() {
        bool neg = accept_char('-');
        double v = parse_number();
        return neg ? -v : v;
    }

    ExprPtr parse_primary() {
        skip_ws();
        if (pos_ >= text_.size())
            fail("unexpected end of input", {"number", "identifier", "("});
        char c = text_[pos_];

        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
            return Expr::constant(parse_number());

        if (c == '(') {
            ++pos_;
            ExprPtr e = parse_expr();
            expect_char(')', ")");
            return e;
        }

        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t at = pos_;
            std::string name = parse_ident();
            if (name == "piecewise") return parse_piecewise();
            if (name == "exp" || name == "log" || name == "abs" || name == "sqrt") {
                UnaryOp op = name == "exp"   ? UnaryOp::Exp
                           : name == "log"   ? UnaryOp::Log
                           : name == "abs"   ? UnaryOp::Abs
                                             : UnaryOp::Sqrt;
                expect_char('(', "(");
                ExprPtr a = parse_expr();
                if (peek_char(',')) fail("'" + name + "' takes one argument", {")"});
                expect_char(')', ")");
                return Expr::unary(op, a);
            }
            if (name == "min" || name == "max") {
                BinaryOp op = name == "min" ? BinaryOp::Min : BinaryOp::Max;
                expect_char('(', "(");
                ExprPtr a = parse_expr();
                if (!accept_char(',')) fail("'" + name + "' takes two arguments", {","});
                ExprPtr b = parse_expr();
                if (peek_char(',')) fail("'" + name + "' takes two arguments", {")"});
                expect_char(')', ")");
                return Expr::binary(op, a, b);
            }
            if (std::find(idents_.begin(), idents_.end(), name) != idents_.end())
                return Expr::variable(name);
            pos_ = at;
            fail("unknown identifier '" + name + "'", {"identifier"});
        }

        fail(std::string("unexpected character '") + c + "'", {"number", "identifier", "("});
    }

    ExprPtr parse_piecewise() {
        expect_char('(', "(");
        std::vector<Expr::Branch> branches;
        for (;;) {
            expect_char('(', "(");
            double lo = parse_signed_number();
            expect_char(',', ",");
            double hi = parse_signed_number();
            expect_char(')', ")");
            expect_char(':', ":");
            ExprPtr body = parse_expr();
            if (!(lo < hi)) fail("empty piecewise guard", {"lo < hi"});
            branches.push_back({lo, hi, body});
            if (accept_char(',')) continue;
            expect_char(')', ")");
            break;
        }
        // guards must be pairwise disjoint and cover [min lo, max hi]
        std::vector<Expr::Branch> sorted = branches;
        std::sort(sorted.begin(), sorted.end(),
                  [](const Expr::Branch& a, const Expr::Branch& b) { return a.lo < b.lo; });
        for (std::size_t i = 1; i < sorted.size(); ++i) {
            if (sorted[i].lo < sorted[i - 1].hi)
                fail("overlapping piecewise guards", {"disjoint guards"});
            if (sorted[i].lo > sorted[i - 1].hi)
                fail("piecewise guards leave a gap", {"contiguous guards"});
        }
        return Expr::piecewise(std::move(branches));
    }
};

} // namespace detail

/// Parse a single-variable expression in x.
inline ExprPtr parse(std::string_view text) {
    return detail::Parser(text, {"x"}).parse();
}

/// Parse a two-variable map in (y, x), for eta expressions.
inline ExprPtr parse_eta(std::string_view text) {
    return detail::Parser(text, {"x", "y"}).parse();
}

/// Parse a family template: x plus named parameters.
inline ExprPtr parse_with_params(std::string_view text, const std::vector<std::string>& params) {
    std::vector<std::string> idents = {"x"};
    idents.insert(idents.end(), params.begin(), params.end());
    return detail::Parser(text, std::move(idents)).parse();
}

// ---------------------------------------------------------------------------
// Substitution

/// New expression with each named variable replaced by a subtree.
inline ExprPtr substitute(const ExprPtr& e, const std::map<std::string, ExprPtr>& bindings) {
    switch (e->kind()) {
        case Expr::Kind::Constant: return e;
        case Expr::Kind::Variable: {
            auto it = bindings.find(e->variable_name());
            return it == bindings.end() ? e : it->second;
        }
        case Expr::Kind::Unary:
            return Expr::unary(e->unary_op(), substitute(e->children()[0], bindings));
        case Expr::Kind::Binary:
            return Expr::binary(e->binary_op(), substitute(e->children()[0], bindings),
                                substitute(e->children()[1], bindings));
        case Expr::Kind::Piecewise: {
            std::vector<Expr::Branch> brs;
            brs.reserve(e->branches().size());
            for (const auto& br : e->branches())
                brs.push_back({br.lo, br.hi, substitute(br.body, bindings)});
            return Expr::piecewise(std::move(brs));
        }
    }
    throw DomainError("bad node kind");
}

/// Bind named parameters to constants (family instantiation).
inline ExprPtr bind_params(const ExprPtr& e, const std::map<std::string, double>& values) {
    std::map<std::string, ExprPtr> bindings;
    for (const auto& [k, v] : values) bindings.emplace(k, Expr::constant(v));
    return substitute(e, bindings);
}

// ---------------------------------------------------------------------------
// Kink location

namespace detail {

inline void refine_zero(const Expr& sub, double lo, double hi, std::vector<double>& out) {
    // plain bisection on a sign change of the subexpression
    double flo = eval(sub, lo), fhi = eval(sub, hi);
    if (flo == 0.0) {
        out.push_back(lo);
        return;
    }
    if (fhi == 0.0) {
        out.push_back(hi);
        return;
    }
    if ((flo < 0.0) == (fhi < 0.0)) return;
    for (int i = 0; i < 80; ++i) {
        double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        double fm = eval(sub, mid);
        if (fm == 0.0) {
            out.push_back(mid);
            return;
        }
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    out.push_back(0.5 * (lo + hi));
}

// Sign-change scan of a subexpression; each bracketed zero is refined by
// bisection and recorded.
inline void scan_zeros(const Expr& sub, double lo, double hi, int scan, std::vector<double>& out) {
    auto probe = [&](double t) {
        try {
            return eval(sub, t);
        } catch (const DomainError&) {
            return std::nan("");
        }
    };
    double prev_t = lo;
    double prev_v = probe(prev_t);
    for (int i = 1; i <= scan; ++i) {
        double t = lo + (hi - lo) * static_cast<double>(i) / scan;
        double v = probe(t);
        if (std::isfinite(prev_v) && std::isfinite(v) &&
            ((prev_v <= 0.0 && v >= 0.0) || (prev_v >= 0.0 && v <= 0.0)) &&
            !(prev_v == 0.0 && v == 0.0))
            refine_zero(sub, prev_t, t, out);
        prev_t = t;
        prev_v = v;
    }
}

inline void collect_kinks(const Expr& e, double lo, double hi, int scan, std::vector<double>& out) {
    switch (e.kind()) {
        case Expr::Kind::Constant:
        case Expr::Kind::Variable: return;
        case Expr::Kind::Unary:
            if (e.unary_op() == UnaryOp::Abs)
                scan_zeros(*e.children()[0], lo, hi, scan, out);
            collect_kinks(*e.children()[0], lo, hi, scan, out);
            return;
        case Expr::Kind::Binary: {
            if (e.binary_op() == BinaryOp::Min || e.binary_op() == BinaryOp::Max) {
                auto diff = Expr::binary(BinaryOp::Sub, e.children()[0], e.children()[1]);
                scan_zeros(*diff, lo, hi, scan, out);
            }
            collect_kinks(*e.children()[0], lo, hi, scan, out);
            collect_kinks(*e.children()[1], lo, hi, scan, out);
            return;
        }
        case Expr::Kind::Piecewise: {
            for (const auto& br : e.branches()) {
                if (br.lo > lo && br.lo < hi) out.push_back(br.lo);
                if (br.hi > lo && br.hi < hi) out.push_back(br.hi);
                collect_kinks(*br.body, lo, hi, scan, out);
            }
            return;
        }
    }
}

} // namespace detail

/// Candidate non-smooth points of e in [lo, hi]: piecewise breakpoints,
/// abs-argument zeros and min/max crossings found by a sign-change scan.
/// Heuristic (tangential zeros without a sign change are missed); used to
/// pre-split quadrature panels and to reject kinked integrands.
inline std::vector<double> kink_candidates(const Expr& e, double lo, double hi,
                                           int scan_points = 256) {
    std::vector<double> out;
    detail::collect_kinks(e, lo, hi, scan_points, out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end(),
                          [&](double a, double b) { return std::abs(a - b) <= 1e-13 * (1.0 + std::abs(a)); }),
              out.end());
    // clip to the open interior
    out.erase(std::remove_if(out.begin(), out.end(),
                             [&](double t) { return !(t > lo && t < hi); }),
              out.end());
    return out;
}

} // namespace fracineq
