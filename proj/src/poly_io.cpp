#include "chebcert/poly_io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace chebcert {

using nlohmann::json;

namespace {

std::string basis_name(Basis b) {
    switch (b) {
        case Basis::Monomial: return "monomial";
        case Basis::Chebyshev: return "chebyshev";
        case Basis::NormalizedChebyshev: return "normalized-chebyshev";
    }
    throw std::logic_error("unreachable");
}

Basis basis_from_name(const std::string& s) {
    if (s == "monomial") return Basis::Monomial;
    if (s == "chebyshev") return Basis::Chebyshev;
    if (s == "normalized-chebyshev") return Basis::NormalizedChebyshev;
    throw std::invalid_argument("unknown basis: " + s);
}

// Recursive-descent parser for sums of products of numbers and x<i>[^k].
class ExprParser {
public:
    explicit ExprParser(const std::string& s) : s_(s) {}

    // Returns terms as (exponent map by 1-based variable index, coefficient).
    std::vector<std::pair<std::map<int, int>, double>> parse() {
        std::vector<std::pair<std::map<int, int>, double>> terms;
        skip_ws();
        double sign = 1.0;
        if (peek() == '+' || peek() == '-') sign = (get() == '-') ? -1.0 : 1.0;
        terms.push_back(parse_term(sign));
        skip_ws();
        while (pos_ < s_.size()) {
            char op = get();
            if (op != '+' && op != '-') throw std::invalid_argument("expected + or - in expression");
            terms.push_back(parse_term(op == '-' ? -1.0 : 1.0));
            skip_ws();
        }
        return terms;
    }

private:
    std::pair<std::map<int, int>, double> parse_term(double sign) {
        std::map<int, int> exps;
        double coeff = sign;
        bool first = true;
        while (true) {
            skip_ws();
            if (pos_ >= s_.size()) break;
            char c = peek();
            if (c == 'x') {
                ++pos_;
                int idx = parse_int("variable index");
                int e = 1;
                skip_ws();
                if (pos_ < s_.size() && peek() == '^') {
                    ++pos_;
                    e = parse_int("exponent");
                }
                exps[idx] += e;
            } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
                coeff *= parse_number();
            } else if (first) {
                throw std::invalid_argument("unexpected character in expression");
            } else {
                break;
            }
            first = false;
            skip_ws();
            if (pos_ < s_.size() && peek() == '*') {
                ++pos_;
                continue;
            }
            break;
        }
        if (first) throw std::invalid_argument("empty term in expression");
        return {std::move(exps), coeff};
    }

    int parse_int(const char* what) {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ == start) throw std::invalid_argument(std::string("expected ") + what);
        return std::stoi(s_.substr(start, pos_ - start));
    }

    double parse_number() {
        std::size_t consumed = 0;
        double v = std::stod(s_.substr(pos_), &consumed);
        pos_ += consumed;
        return v;
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    char peek() const { return s_[pos_]; }
    char get() { return s_[pos_++]; }

    const std::string& s_;
    std::size_t pos_ = 0;
};

}  // namespace

json poly_to_json(const Poly& p) {
    json j;
    j["nvars"] = p.nvars();
    j["basis"] = basis_name(p.basis());
    json terms = json::array();
    for (const auto& [alpha, c] : p.terms())
        terms.push_back({{"alpha", alpha.exponents()}, {"c", c}});
    j["terms"] = std::move(terms);
    return j;
}

Poly poly_from_json(const json& j, std::string var_group) {
    const std::size_t nvars = j.at("nvars").get<std::size_t>();
    const Basis basis = basis_from_name(j.at("basis").get<std::string>());
    Poly p(nvars, basis, std::move(var_group));
    for (const auto& t : j.at("terms")) {
        std::vector<int> e = t.at("alpha").get<std::vector<int>>();
        if (e.size() != nvars) throw std::invalid_argument("alpha length != nvars");
        p.add_term(MultiIndex(std::move(e)), t.at("c").get<double>());
    }
    return p;
}

Poly parse_poly(const std::string& text, std::size_t nvars) {
    auto terms = ExprParser(text).parse();
    std::size_t maxvar = 0;
    for (const auto& [exps, c] : terms)
        for (const auto& [idx, e] : exps) {
            if (idx < 1) throw std::invalid_argument("variable indices are 1-based");
            maxvar = std::max(maxvar, static_cast<std::size_t>(idx));
        }
    const std::size_t n = nvars ? nvars : std::max<std::size_t>(maxvar, 1);
    if (maxvar > n) throw std::invalid_argument("variable index exceeds nvars");
    Poly p(n, Basis::Monomial);
    for (const auto& [exps, c] : terms) {
        MultiIndex alpha(n);
        for (const auto& [idx, e] : exps) alpha[idx - 1] += e;
        p.add_term(alpha, c);
    }
    return p;
}

Poly read_poly_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    std::string text = ss.str();
    std::size_t i = 0;
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i < text.size() && text[i] == '{') return poly_from_json(json::parse(text));
    return parse_poly(text);
}

}  // namespace chebcert
