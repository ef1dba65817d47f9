#include "singcurve/curve_input.hpp"

#include <cctype>
#include <map>
#include <numeric>
#include <set>
#include <utility>

#include <json.hpp>

#include "singcurve/errors.hpp"
#include "singcurve/newton_puiseux.hpp"

namespace singcurve {

namespace {

// Recursive-descent parser for the shared expression grammar. Variables are
// mapped to exponent slots of a BivariatePolynomial so the same core serves
// polynomials in x,y and series in t.
class ExprParser {
public:
    ExprParser(const std::string& text, std::map<std::string, BivariatePolynomial::Key> vars)
        : text_(text), vars_(std::move(vars)) {}

    BivariatePolynomial parse() {
        BivariatePolynomial value = expression();
        skip_ws();
        if (pos_ != text_.size()) {
            throw SyntaxError("unexpected character '" + std::string(1, text_[pos_]) + "'",
                              pos_);
        }
        return value;
    }

private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    bool peek_is(char c) {
        skip_ws();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    void expect(char c) {
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] != c) {
            throw SyntaxError("expected '" + std::string(1, c) + "'", pos_);
        }
        ++pos_;
    }

    BivariatePolynomial expression() {
        skip_ws();
        bool negate = false;
        if (peek_is('-')) {
            ++pos_;
            negate = true;
        } else if (peek_is('+')) {
            ++pos_;
        }
        BivariatePolynomial acc = term();
        if (negate) acc = -acc;
        while (true) {
            skip_ws();
            if (pos_ >= text_.size()) break;
            char c = text_[pos_];
            if (c == '+') {
                ++pos_;
                acc = acc + term();
            } else if (c == '-') {
                ++pos_;
                acc = acc - term();
            } else {
                break;
            }
        }
        return acc;
    }

    BivariatePolynomial term() {
        BivariatePolynomial acc = factor();
        while (peek_is('*')) {
            ++pos_;
            acc = acc * factor();
        }
        // Guard against implicit multiplication: a factor directly followed
        // by another factor start is rejected here with a clear message.
        skip_ws();
        if (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '(' || std::isdigit(static_cast<unsigned char>(c)) ||
                std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                throw SyntaxError("missing operator (implicit multiplication is not allowed)",
                                  pos_);
            }
        }
        return acc;
    }

    BivariatePolynomial factor() {
        BivariatePolynomial b = base();
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == '^') {
            ++pos_;
            long e = read_uint("exponent");
            BivariatePolynomial acc = BivariatePolynomial::constant(Rational(1));
            for (long k = 0; k < e; ++k) acc = acc * b;
            return acc;
        }
        return b;
    }

    BivariatePolynomial base() {
        skip_ws();
        if (pos_ >= text_.size()) throw SyntaxError("unexpected end of input", pos_);
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            BivariatePolynomial inner = expression();
            expect(')');
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            return BivariatePolynomial::constant(read_rational());
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
                ++pos_;
            }
            std::string name = text_.substr(start, pos_ - start);
            auto it = vars_.find(name);
            if (it == vars_.end()) throw UnknownVariable(name, start);
            return BivariatePolynomial::monomial(it->second.first, it->second.second,
                                                 Rational(1));
        }
        throw SyntaxError("expected a number, variable, or '('", pos_);
    }

    long read_uint(const char* what) {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
        if (pos_ == start) {
            throw SyntaxError(std::string("expected an integer ") + what, pos_);
        }
        const std::string digits = text_.substr(start, pos_ - start);
        if (digits.size() > 6) throw SyntaxError("exponent too large", start);
        return std::stol(digits);
    }

    Rational read_rational() {
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
        std::string lit = text_.substr(start, pos_ - start);
        if (pos_ < text_.size() && text_[pos_] == '/') {
            ++pos_;
            std::size_t dstart = pos_;
            while (pos_ < text_.size() &&
                   std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                ++pos_;
            }
            if (pos_ == dstart) throw SyntaxError("expected a denominator", pos_);
            std::string den = text_.substr(dstart, pos_ - dstart);
            if (den == "0" || den.find_first_not_of('0') == std::string::npos) {
                throw SyntaxError("zero denominator", dstart);
            }
            lit += "/" + den;
        }
        return Rational::from_string(lit);
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    std::map<std::string, BivariatePolynomial::Key> vars_;
};

PowerSeries series_from_poly(const BivariatePolynomial& p) {
    std::map<long, Rational> coeffs;
    for (const auto& [key, c] : p.terms()) coeffs[key.first] = c;
    return PowerSeries(std::move(coeffs), std::nullopt);
}

// Expects `name` at text_[pos], optionally followed by "(t)", then '='.
std::size_t consume_component_head(const std::string& text, std::size_t pos, char name) {
    auto skip = [&]() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    skip();
    if (pos >= text.size() || text[pos] != name) {
        throw SyntaxError(std::string("expected '") + name + "(t) = ...'", pos);
    }
    ++pos;
    skip();
    if (pos < text.size() && text[pos] == '(') {
        ++pos;
        skip();
        if (pos >= text.size() || text[pos] != 't') throw SyntaxError("expected 't'", pos);
        ++pos;
        skip();
        if (pos >= text.size() || text[pos] != ')') throw SyntaxError("expected ')'", pos);
        ++pos;
        skip();
    }
    if (pos >= text.size() || text[pos] != '=') throw SyntaxError("expected '='", pos);
    return pos + 1;
}

long gcd_of_support(const PowerSeries& s, long acc) {
    for (const auto& [e, c] : s.coeffs()) {
        (void)c;
        acc = std::gcd(acc, e);
    }
    return acc;
}

}  // namespace

long BranchParam::truncation_order() const {
    if (exact()) {
        long m = 0;
        if (!x.coeffs().empty()) m = std::max(m, x.coeffs().rbegin()->first);
        if (!y.coeffs().empty()) m = std::max(m, y.coeffs().rbegin()->first);
        return m + 1;
    }
    long t = -1;
    if (x.trunc()) t = *x.trunc();
    if (y.trunc()) t = (t < 0) ? *y.trunc() : std::min(t, *y.trunc());
    return t;
}

long BranchParam::multiplicity() const {
    if (x.is_exact_zero() && y.is_exact_zero()) {
        throw InternalError("multiplicity of the empty parametrization");
    }
    if (x.is_exact_zero()) return y.order();
    if (y.is_exact_zero()) return x.order();
    OrderInfo ox = x.order_info();
    OrderInfo oy = y.order_info();
    using K = OrderInfo::Kind;
    if (ox.kind == K::Known && oy.kind == K::Known) return std::min(ox.order, oy.order);
    if (ox.kind == K::Known && oy.kind == K::Indeterminate && ox.order < *y.trunc()) {
        return ox.order;
    }
    if (oy.kind == K::Known && ox.kind == K::Indeterminate && oy.order < *x.trunc()) {
        return oy.order;
    }
    throw PrecisionExhausted("branch multiplicity not determined by the known terms");
}

BivariatePolynomial parse_polynomial(const std::string& text) {
    ExprParser p(text, {{"x", {1, 0}}, {"y", {0, 1}}});
    return p.parse();
}

PowerSeries parse_series(const std::string& text) {
    ExprParser p(text, {{"t", {1, 0}}});
    return series_from_poly(p.parse());
}

BranchParam parse_parametrization(const std::string& text) {
    std::size_t semi = text.find(';');
    if (semi == std::string::npos) {
        throw SyntaxError("expected 'x(t) = ...; y(t) = ...'", text.size());
    }
    std::string xs = text.substr(0, semi);
    std::string ys = text.substr(semi + 1);

    std::size_t xstart = consume_component_head(xs, 0, 'x');
    std::size_t ystart = consume_component_head(ys, 0, 'y');

    BranchParam b;
    b.x = parse_series(xs.substr(xstart));
    b.y = parse_series(ys.substr(ystart));
    validate_branch(b);
    return b;
}

void validate_branch(const BranchParam& b) {
    if (b.x.is_exact_zero() && b.y.is_exact_zero()) {
        throw NonPositiveOrder("both parametrization components are zero");
    }
    for (const PowerSeries* s : {&b.x, &b.y}) {
        if (!s->coeffs().empty() && s->coeffs().begin()->first == 0) {
            throw NonPositiveOrder("parametrization component has a constant term");
        }
        if (s->trunc() && *s->trunc() < 1) {
            throw NonPositiveOrder("parametrization truncated before any term is known");
        }
    }
    long g = gcd_of_support(b.x, 0);
    g = gcd_of_support(b.y, g);
    if (g > 1) {
        throw ImprimitiveBranch("support exponents share the factor " + std::to_string(g));
    }
    if (g == 0) {
        // One component is exactly zero and the other has no known terms yet.
        throw PrecisionExhausted("no known terms determine the branch");
    }
}

void validate_curve(const CurveSpec& spec) {
    std::set<int> ids;
    for (const BranchParam& b : spec.branches) {
        validate_branch(b);
        if (!ids.insert(b.id).second) {
            throw ConsistencyError("duplicate branch id " + std::to_string(b.id));
        }
        if (spec.implicit_equation) {
            PowerSeries r = spec.implicit_equation->eval_on_param(b.x, b.y, -1);
            if (r.order_info().kind == OrderInfo::Kind::Known) {
                throw ConsistencyError("branch does not satisfy the declared equation");
            }
        }
    }
}

CurveSpec load_curve(const std::string& json_text, long extraction_truncation) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw SchemaError("top-level value must be an object");

    const bool has_poly = doc.contains("polynomial");
    const bool has_branches = doc.contains("branches");
    if (has_poly == has_branches) {
        throw SchemaError("exactly one of \"polynomial\" or \"branches\" is required");
    }

    CurveSpec spec;
    if (has_poly) {
        for (const auto& item : doc.items()) {
            if (item.key() != "polynomial") {
                throw SchemaError("unexpected key \"" + item.key() + "\"");
            }
        }
        if (!doc["polynomial"].is_string()) {
            throw SchemaError("\"polynomial\" must be a string");
        }
        BivariatePolynomial f = parse_polynomial(doc["polynomial"].get<std::string>());
        spec.implicit_equation = f;
        spec.branches = branches(f, extraction_truncation);
    } else {
        for (const auto& item : doc.items()) {
            if (item.key() != "branches" && item.key() != "truncation") {
                throw SchemaError("unexpected key \"" + item.key() + "\"");
            }
        }
        if (!doc["branches"].is_array() || doc["branches"].empty()) {
            throw SchemaError("\"branches\" must be a non-empty array");
        }
        std::optional<long> trunc;
        if (doc.contains("truncation")) {
            if (!doc["truncation"].is_number_integer() ||
                doc["truncation"].get<long>() < 1) {
                throw SchemaError("\"truncation\" must be a positive integer");
            }
            trunc = doc["truncation"].get<long>();
        }
        int next_id = 0;
        for (const auto& entry : doc["branches"]) {
            if (!entry.is_object() || !entry.contains("x") || !entry.contains("y")) {
                throw SchemaError("each branch needs \"x\" and \"y\" strings");
            }
            for (const auto& item : entry.items()) {
                if (item.key() != "x" && item.key() != "y" && item.key() != "label") {
                    throw SchemaError("unexpected branch key \"" + item.key() + "\"");
                }
            }
            if (!entry["x"].is_string() || !entry["y"].is_string()) {
                throw SchemaError("branch components must be strings");
            }
            BranchParam b;
            b.id = next_id++;
            b.x = parse_series(entry["x"].get<std::string>());
            b.y = parse_series(entry["y"].get<std::string>());
            if (entry.contains("label")) {
                if (!entry["label"].is_string()) {
                    throw SchemaError("\"label\" must be a string");
                }
                b.label = entry["label"].get<std::string>();
            }
            if (trunc) {
                b.x = b.x.truncate_to(*trunc);
                b.y = b.y.truncate_to(*trunc);
            }
            spec.branches.push_back(std::move(b));
        }
    }
    validate_curve(spec);
    return spec;
}

std::string save_curve(const CurveSpec& spec) {
    nlohmann::ordered_json doc;
    if (spec.implicit_equation) {
        doc["polynomial"] = spec.implicit_equation->str("x", "y");
    } else {
        doc["branches"] = nlohmann::ordered_json::array();
        std::optional<long> trunc;
        for (const BranchParam& b : spec.branches) {
            nlohmann::ordered_json e;
            e["x"] = b.x.str("t");
            e["y"] = b.y.str("t");
            if (!b.label.empty()) e["label"] = b.label;
            doc["branches"].push_back(std::move(e));
            if (!b.exact()) {
                long t = b.truncation_order();
                trunc = trunc ? std::min(*trunc, t) : t;
            }
        }
        if (trunc) doc["truncation"] = *trunc;
    }
    return doc.dump(2) + "\n";
}

}  // namespace singcurve
