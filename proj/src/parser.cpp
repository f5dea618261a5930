#include "dani/parser.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace dani {

namespace {

struct Token {
    enum class Kind { nat, var, plus, minus, star, caret, slash, lparen, rparen, end };
    Kind kind;
    std::string text;
    std::size_t line, col;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    Token next() {
        skip_ws();
        std::size_t line = line_, col = col_;
        if (pos_ >= src_.size()) return {Token::Kind::end, "", line, col};
        char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string num;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                num += src_[pos_];
                advance();
            }
            return {Token::Kind::nat, num, line, col};
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::string name;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])))) {
                name += src_[pos_];
                advance();
            }
            return {Token::Kind::var, name, line, col};
        }
        advance();
        switch (c) {
            case '+': return {Token::Kind::plus, "+", line, col};
            case '-': return {Token::Kind::minus, "-", line, col};
            case '*': return {Token::Kind::star, "*", line, col};
            case '^': return {Token::Kind::caret, "^", line, col};
            case '/': return {Token::Kind::slash, "/", line, col};
            case '(': return {Token::Kind::lparen, "(", line, col};
            case ')': return {Token::Kind::rparen, ")", line, col};
            default:
                throw ParseError(line, col, std::string("unexpected character '") + c + "'");
        }
    }

private:
    std::string_view src_;
    std::size_t pos_ = 0, line_ = 1, col_ = 1;

    void advance() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) advance();
    }
};

class Parser {
public:
    Parser(std::string_view text, std::shared_ptr<const Universe> uni, FieldSpec field)
        : lex_(text), uni_(std::move(uni)), field_(field) {
        cur_ = lex_.next();
    }

    Polynomial run() {
        Polynomial p = expr();
        expect(Token::Kind::end, "end of input");
        return p;
    }

private:
    Lexer lex_;
    Token cur_;
    std::shared_ptr<const Universe> uni_;
    FieldSpec field_;

    void bump() { cur_ = lex_.next(); }

    void expect(Token::Kind k, const std::string& what) {
        if (cur_.kind != k)
            throw ParseError(cur_.line, cur_.col,
                             "expected " + what + ", got '" + describe(cur_) + "'");
    }

    static std::string describe(const Token& t) {
        return t.kind == Token::Kind::end ? "end of input" : t.text;
    }

    Polynomial expr() {
        Polynomial p = term();
        while (cur_.kind == Token::Kind::plus || cur_.kind == Token::Kind::minus) {
            bool neg = cur_.kind == Token::Kind::minus;
            bump();
            Polynomial q = term();
            p = neg ? p - q : p + q;
        }
        return p;
    }

    Polynomial term() {
        Polynomial p = factor();
        while (cur_.kind == Token::Kind::star) {
            bump();
            p *= factor();
        }
        return p;
    }

    Polynomial factor() {
        bool neg = false;
        if (cur_.kind == Token::Kind::minus) {
            neg = true;
            bump();
        }
        Polynomial a = atom();
        if (cur_.kind == Token::Kind::caret) {
            bump();
            if (cur_.kind == Token::Kind::minus)
                throw ParseError(cur_.line, cur_.col, "negative exponent");
            expect(Token::Kind::nat, "natural number exponent");
            if (cur_.text.size() > 9)
                throw ParseError(cur_.line, cur_.col, "exponent overflow");
            long e = std::stol(cur_.text);
            if (e > 1000000) throw ParseError(cur_.line, cur_.col, "exponent overflow");
            bump();
            a = a.pow(static_cast<unsigned>(e));
        }
        return neg ? -a : a;
    }

    Polynomial atom() {
        switch (cur_.kind) {
            case Token::Kind::nat: {
                mpz_class num(cur_.text);
                bump();
                if (cur_.kind == Token::Kind::slash) {
                    bump();
                    expect(Token::Kind::nat, "natural number denominator");
                    mpz_class den(cur_.text);
                    if (den == 0)
                        throw ParseError(cur_.line, cur_.col, "zero denominator");
                    bump();
                    return Polynomial::constant(field_, uni_,
                                                FieldElem::from_ratio(field_, num, den));
                }
                return Polynomial::constant(field_, uni_, FieldElem::from_mpz(field_, num));
            }
            case Token::Kind::var: {
                if (!uni_->index_of(cur_.text))
                    throw ParseError(cur_.line, cur_.col, "unknown variable '" + cur_.text + "'");
                Polynomial v = Polynomial::variable(field_, uni_, cur_.text);
                bump();
                return v;
            }
            case Token::Kind::lparen: {
                bump();
                Polynomial p = expr();
                expect(Token::Kind::rparen, "')'");
                bump();
                return p;
            }
            default:
                throw ParseError(cur_.line, cur_.col,
                                 "expected number, variable or '(', got '" + describe(cur_) + "'");
        }
    }
};

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::vector<int> parse_int_list(const std::string& text) {
    std::string t = text;
    if (!t.empty() && t.front() == '[') t = t.substr(1);
    if (!t.empty() && t.back() == ']') t.pop_back();
    std::vector<int> out;
    std::stringstream ss(t);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) throw ConfigError("r: empty entry in list");
        for (char c : item) {
            if (!std::isdigit(static_cast<unsigned char>(c)) && c != '-')
                throw ConfigError("r: bad integer '" + item + "'");
        }
        out.push_back(std::stoi(item));
    }
    if (out.empty()) throw ConfigError("r: empty list");
    return out;
}

void validate(RingConfig& cfg) {
    if (cfg.m <= 0) throw ConfigError("m must be positive");
    if (static_cast<int>(cfg.r.size()) != cfg.m)
        throw ConfigError("r length does not equal m");
    for (int ri : cfg.r) {
        if (ri < 1) throw ConfigError("r entries must be positive");
    }
    auto uni = cfg.defining.universe();
    if (cfg.family == Family::danielewski) {
        std::size_t v_idx = *uni->index_of("V");
        std::int32_t d = cfg.defining.degree_in(v_idx);
        Polynomial lead = cfg.defining.coeff_of(v_idx, d);
        Polynomial one = Polynomial::constant(cfg.field, uni, 1);
        if (d < 1 || lead != one) throw ConfigError("F not monic in V");
        if (d < 2) throw ConfigError("deg_V F < 2");
    } else {
        for (int ri : cfg.r) {
            if (ri <= 1) throw ConfigError("asanuma requires r_i > 1 for all i");
        }
        // h(Z,T) := H(0,...,0,Z,T) must be nonzero.
        std::map<std::string, Polynomial> at_zero;
        for (int i = 1; i <= cfg.m; ++i) {
            at_zero.emplace("X" + std::to_string(i), Polynomial::zero(cfg.field, uni));
        }
        if (cfg.defining.substitute(at_zero).is_zero())
            throw ConfigError("H(0,...,0,Z,T) = 0");
    }
}

} // namespace

Polynomial parse_poly(std::string_view text,
                      const std::shared_ptr<const Universe>& universe,
                      const FieldSpec& field) {
    return Parser(text, universe, field).run();
}

std::string print_poly(const Polynomial& f) { return f.str(); }

std::string family_name(Family f) {
    return f == Family::danielewski ? "danielewski" : "asanuma";
}

std::shared_ptr<const Universe> presentation_universe(Family family, int m) {
    std::vector<std::string> names;
    if (family == Family::danielewski) {
        for (int i = 1; i <= m; ++i) names.push_back("T" + std::to_string(i));
        names.push_back("V");
    } else {
        for (int i = 1; i <= m; ++i) names.push_back("X" + std::to_string(i));
        names.push_back("Z");
        names.push_back("T");
    }
    return Universe::make(std::move(names));
}

RingConfig parse_ring_config(std::string_view text, const std::string& origin) {
    std::map<std::string, std::string> kv;
    std::size_t lineno = 0;
    std::stringstream ss{std::string(text)};
    std::string line;
    while (std::getline(ss, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::string t = trim(line);
        if (t.empty()) continue;
        auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(t.substr(0, eq));
        std::string val = trim(t.substr(eq + 1));
        if (kv.count(key))
            throw ConfigError(origin + ": duplicate key '" + key + "'");
        kv[key] = val;
    }

    RingConfig cfg;
    if (!kv.count("field")) throw ConfigError("missing key: field");
    cfg.field = FieldSpec::parse(kv["field"]);

    bool has_F = kv.count("F") > 0;
    bool has_H = kv.count("H") > 0;
    if (has_F && has_H) throw ConfigError("both F and H given");
    if (!has_F && !has_H) throw ConfigError("missing key: F or H");
    Family inferred = has_F ? Family::danielewski : Family::asanuma;
    if (kv.count("family")) {
        const std::string& fam = kv["family"];
        if (fam == "danielewski") cfg.family = Family::danielewski;
        else if (fam == "asanuma") cfg.family = Family::asanuma;
        else throw ConfigError("family: expected danielewski or asanuma");
        if (cfg.family != inferred)
            throw ConfigError(std::string("family ") + fam + " does not match defining key " +
                              (has_F ? "F" : "H"));
    } else {
        cfg.family = inferred;
    }

    if (!kv.count("r")) throw ConfigError("missing key: r");
    cfg.r = parse_int_list(kv["r"]);
    if (kv.count("m")) {
        cfg.m = std::stoi(kv["m"]);
    } else {
        cfg.m = static_cast<int>(cfg.r.size());
    }

    auto uni = presentation_universe(cfg.family, cfg.m);
    cfg.defining = parse_poly(has_F ? kv["F"] : kv["H"], uni, cfg.field);
    if (kv.count("g1")) cfg.g1 = parse_poly(kv["g1"], uni, cfg.field);
    if (kv.count("g2")) cfg.g2 = parse_poly(kv["g2"], uni, cfg.field);

    validate(cfg);
    return cfg;
}

RingConfig load_ring_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_ring_config(buf.str(), path.string());
}

RingConfig make_ring_config(FieldSpec field, Family family, std::vector<int> r,
                            std::string_view defining_text,
                            std::optional<std::string> g1_text,
                            std::optional<std::string> g2_text) {
    RingConfig cfg;
    cfg.field = field;
    cfg.family = family;
    cfg.m = static_cast<int>(r.size());
    cfg.r = std::move(r);
    auto uni = presentation_universe(family, cfg.m);
    cfg.defining = parse_poly(defining_text, uni, field);
    if (g1_text) cfg.g1 = parse_poly(*g1_text, uni, field);
    if (g2_text) cfg.g2 = parse_poly(*g2_text, uni, field);
    validate(cfg);
    return cfg;
}

} // namespace dani
