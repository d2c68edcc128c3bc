#include "bispec/parser.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <string>
#include <vector>

namespace bispec {
namespace {

enum class Tok { Number, Imag, Z1, Z2, Plus, Minus, Star, Caret, LParen, RParen, End };

struct Token {
    Tok kind;
    std::size_t pos;
    double value = 0.0;     // Number only
    bool imaginary = false; // Number with an 'i' suffix
    bool integral = false;  // Number written without '.', 'e', 'E'
};

std::vector<Token> lex(const std::string& s) {
    std::vector<Token> out;
    std::size_t k = 0;
    while (k < s.size()) {
        char c = s[k];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++k;
            continue;
        }
        std::size_t pos = k;
        switch (c) {
            case '+': out.push_back({Tok::Plus, pos}); ++k; continue;
            case '-': out.push_back({Tok::Minus, pos}); ++k; continue;
            case '*': out.push_back({Tok::Star, pos}); ++k; continue;
            case '^': out.push_back({Tok::Caret, pos}); ++k; continue;
            case '(': out.push_back({Tok::LParen, pos}); ++k; continue;
            case ')': out.push_back({Tok::RParen, pos}); ++k; continue;
            default: break;
        }
        if (c == 'i') {
            out.push_back({Tok::Imag, pos});
            ++k;
            continue;
        }
        if (c == 'z') {
            if (k + 1 < s.size() && (s[k + 1] == '1' || s[k + 1] == '2')) {
                out.push_back({s[k + 1] == '1' ? Tok::Z1 : Tok::Z2, pos});
                k += 2;
                continue;
            }
            throw syntax_error(pos, "z1 or z2");
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t end = k;
            bool integral = true;
            while (end < s.size() &&
                   (std::isdigit(static_cast<unsigned char>(s[end])) || s[end] == '.'))
                ++end;
            if (end < s.size() && (s[end] == 'e' || s[end] == 'E')) {
                std::size_t e = end + 1;
                if (e < s.size() && (s[e] == '+' || s[e] == '-')) ++e;
                if (e < s.size() && std::isdigit(static_cast<unsigned char>(s[e]))) {
                    ++e;
                    while (e < s.size() && std::isdigit(static_cast<unsigned char>(s[e]))) ++e;
                    end = e;
                }
            }
            double v = 0.0;
            auto [p, ec] = std::from_chars(s.data() + k, s.data() + end, v);
            if (ec != std::errc() || p != s.data() + end)
                throw syntax_error(pos, "number");
            for (std::size_t m = k; m < end; ++m)
                if (s[m] == '.' || s[m] == 'e' || s[m] == 'E') integral = false;
            Token t{Tok::Number, pos, v, false, integral};
            if (end < s.size() && s[end] == 'i') {
                t.imaginary = true;
                ++end;
            }
            out.push_back(t);
            k = end;
            continue;
        }
        throw syntax_error(pos, "operand or operator");
    }
    out.push_back({Tok::End, s.size()});
    return out;
}

class Parser {
  public:
    explicit Parser(const std::string& s) : toks_(lex(s)) {}

    WeightPoly run() {
        WeightPoly p = expr();
        if (peek().kind != Tok::End)
            throw syntax_error(peek().pos, "end of input or operator");
        return p;
    }

  private:
    std::vector<Token> toks_;
    std::size_t at_ = 0;

    const Token& peek() const { return toks_[at_]; }
    Token take() { return toks_[at_++]; }

    WeightPoly expr() {
        WeightPoly acc = term();
        while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
            Tok op = take().kind;
            WeightPoly rhs = term();
            acc = (op == Tok::Plus) ? acc + rhs : acc - rhs;
        }
        return acc;
    }

    WeightPoly term() {
        WeightPoly acc = factor();
        while (peek().kind == Tok::Star) {
            take();
            acc = acc * factor();
        }
        return acc;
    }

    WeightPoly factor() {
        if (peek().kind == Tok::Minus) {
            take();
            return factor() * cplx(-1.0);
        }
        if (peek().kind == Tok::Plus) {
            take();
            return factor();
        }
        WeightPoly base = primary();
        if (peek().kind == Tok::Caret) {
            take();
            const Token& e = peek();
            if (e.kind != Tok::Number || e.imaginary || !e.integral)
                throw syntax_error(e.pos, "nonnegative integer exponent");
            take();
            long long k = static_cast<long long>(std::llround(e.value));
            if (k > MAX_EXPONENT)
                throw exponent_too_large("exponent " + std::to_string(k) +
                                         " exceeds limit " + std::to_string(MAX_EXPONENT));
            base = base.pow_int(k);
        }
        return base;
    }

    WeightPoly primary() {
        const Token& t = peek();
        switch (t.kind) {
            case Tok::Number: {
                Token n = take();
                return WeightPoly::constant(n.imaginary ? cplx(0.0, n.value) : cplx(n.value));
            }
            case Tok::Imag:
                take();
                return WeightPoly::constant(cplx(0.0, 1.0));
            case Tok::Z1:
                take();
                return WeightPoly::z1();
            case Tok::Z2:
                take();
                return WeightPoly::z2();
            case Tok::LParen: {
                take();
                WeightPoly inner = expr();
                if (peek().kind != Tok::RParen) throw syntax_error(peek().pos, "')'");
                take();
                return inner;
            }
            default:
                throw syntax_error(t.pos, "operand");
        }
    }
};

}  // namespace

WeightPoly parse_weight(const std::string& text) { return Parser(text).run(); }

}  // namespace bispec
