#include "dsg/knot_dsl.hpp"

#include <numeric>

namespace dsg {

namespace {

constexpr long long kMaxPower = 100000;

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    KnotSpec parse() {
        KnotSpec spec;
        skip_ws();
        if (try_word("unknot")) {
            skip_ws();
            require_end();
            return spec;
        }
        parse_term(spec);
        for (;;) {
            skip_ws();
            if (try_char('#')) {
                parse_term(spec);
                continue;
            }
            if (try_word("ribbon")) {
                spec.ribbon = true;
                continue;
            }
            break;
        }
        require_end();
        return spec;
    }

private:
    void parse_term(KnotSpec& spec) {
        skip_ws();
        size_t at = pos_;
        if (try_word("2b")) {
            expect_char('(');
            long long p = parse_int();
            expect_char('/');
            long long q = parse_int();
            expect_char(')');
            validate_two_bridge(p, q, at);
            long long count = 1;
            skip_ws();
            if (try_char('^')) {
                size_t pow_at = pos_;
                count = parse_int();
                if (count < 1 || count > kMaxPower)
                    throw ParseError("E_POWER_RANGE",
                                     "power must be between 1 and " + std::to_string(kMaxPower),
                                     pow_at);
            }
            for (long long i = 0; i < count; ++i)
                spec.summands.emplace_back(TwoBridgeKnot{p, q});
            return;
        }
        if (try_word("seifert")) {
            expect_char('(');
            spec.summands.emplace_back(parse_seifert(at));
            expect_char(')');
            skip_ws();
            if (try_word("ribbon")) spec.ribbon = true;
            return;
        }
        throw ParseError("E_PARSE", "expected \"2b(\", \"seifert(\" or \"unknot\"", pos_);
    }

    SeifertMatrix parse_seifert(size_t term_at) {
        expect_char('[');
        std::vector<std::vector<long long>> rows;
        for (;;) {
            rows.push_back(parse_row());
            skip_ws();
            if (try_char(',')) continue;
            expect_char(']');
            break;
        }
        size_t n = rows.size();
        for (const auto& r : rows)
            if (r.size() != n)
                throw ParseError("E_SEIFERT_SHAPE", "Seifert matrix must be square", term_at);
        if (n % 2 != 0)
            throw ParseError("E_SEIFERT_SHAPE", "Seifert matrix must have even size", term_at);
        SeifertMatrix sm{IntMatrix(int(n), int(n))};
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) sm.v.at(int(i), int(j)) = rows[i][j];
        try {
            sm.validate();
        } catch (const std::invalid_argument&) {
            throw ParseError("E_SEIFERT_UNIMODULAR", "Seifert matrix needs det(V - V^T) = 1",
                             term_at);
        }
        return sm;
    }

    std::vector<long long> parse_row() {
        skip_ws();
        expect_char('[');
        std::vector<long long> row;
        for (;;) {
            row.push_back(parse_int());
            skip_ws();
            if (try_char(',')) continue;
            expect_char(']');
            return row;
        }
    }

    void validate_two_bridge(long long p, long long q, size_t at) {
        if (p <= 1 || p > kMaxLensOrder)
            throw ParseError("E_2B_P_RANGE", "two-bridge p must satisfy 1 < p <= 100000", at);
        if (p % 2 == 0) throw ParseError("E_2B_P_EVEN", "two-bridge p must be odd", at);
        if (q <= 0 || q >= p)
            throw ParseError("E_2B_Q_RANGE", "two-bridge q must satisfy 0 < q < p", at);
        if (std::gcd(p, q) != 1)
            throw ParseError("E_2B_NOT_REDUCED", "two-bridge p/q must be in lowest terms", at);
    }

    long long parse_int() {
        skip_ws();
        size_t at = pos_;
        bool neg = try_char('-');
        if (pos_ >= text_.size() || !isdigit(text_[pos_]))
            throw ParseError("E_PARSE", "expected an integer", at);
        long long v = 0;
        while (pos_ < text_.size() && isdigit(text_[pos_])) {
            v = v * 10 + (text_[pos_] - '0');
            if (v > kMaxLensOrder * kMaxLensOrder)
                throw ParseError("E_PARSE", "integer literal too large", at);
            ++pos_;
        }
        return neg ? -v : v;
    }

    void skip_ws() {
        while (pos_ < text_.size() && isspace(text_[pos_])) ++pos_;
    }
    bool try_char(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect_char(char c) {
        if (!try_char(c))
            throw ParseError("E_PARSE", std::string("expected '") + c + "'", pos_);
    }
    bool try_word(std::string_view w) {
        skip_ws();
        if (text_.substr(pos_, w.size()) == w) {
            pos_ += w.size();
            return true;
        }
        return false;
    }
    void require_end() {
        skip_ws();
        if (pos_ != text_.size())
            throw ParseError("E_PARSE", "unexpected trailing input", pos_);
    }

    std::string_view text_;
    size_t pos_ = 0;
};

}  // namespace

KnotSpec parse_knot(std::string_view text) { return Parser(text).parse(); }

std::string print_knot(const KnotSpec& k) {
    if (k.summands.empty()) return "unknot";
    std::string out;
    size_t i = 0;
    bool first = true;
    while (i < k.summands.size()) {
        if (!first) out += "#";
        first = false;
        if (const auto* tb = std::get_if<TwoBridgeKnot>(&k.summands[i])) {
            size_t run = 1;
            while (i + run < k.summands.size()) {
                const auto* next = std::get_if<TwoBridgeKnot>(&k.summands[i + run]);
                if (!next || !(*next == *tb)) break;
                ++run;
            }
            out += "2b(" + std::to_string(tb->p) + "/" + std::to_string(tb->q) + ")";
            if (run > 1) out += "^" + std::to_string(run);
            i += run;
            continue;
        }
        const auto& sm = std::get<SeifertMatrix>(k.summands[i]);
        out += "seifert(" + sm.v.to_string() + ")";
        ++i;
    }
    if (k.ribbon.value_or(false)) out += " ribbon";
    return out;
}

}  // namespace dsg
