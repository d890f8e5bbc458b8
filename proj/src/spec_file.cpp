#include "scarr/spec_file.hpp"

#include "scarr/errors.hpp"
#include "scarr/expr_parser.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace scarr {

namespace {

const std::set<std::string> kKeywords = {
    "MANIFOLD", "EVEN",      "ODD",        "FUNC",   "NONVANISHING",
    "METRIC",   "VF",        "STRUCTURE",  "CONNECTION", "CONTRACTION",
    "Gamma",    "weights",   "generators", "d",      "D",
    "s"};

void check_name(TokenStream& ts, const std::string& name) {
    if (kKeywords.count(name))
        ts.fail("'" + name + "' is reserved and cannot be declared");
    // Leading underscores are reserved for solver-internal placeholder
    // symbols.
    if (!name.empty() && name.front() == '_')
        ts.fail("names starting with '_' are reserved");
}

struct PendingMetricEntry {
    std::size_t a, b;
    SuperFunction value;
    std::size_t line, column;
};

class SpecParser {
public:
    explicit SpecParser(const std::string& text) : ts_(tokenize(text)) {}

    ManifoldSpec parse() {
        ts_.expect_keyword("MANIFOLD");
        std::string name = ts_.expect(Tok::Ident, "manifold name").text;

        // Declarations before the chart can be assembled.
        while (!ts_.at_end()) {
            if (ts_.peek_keyword("EVEN")) {
                ts_.next();
                do {
                    Token t = ts_.expect(Tok::Ident, "coordinate name");
                    check_name(ts_, t.text);
                    even_.push_back(CoordinateSymbol{t.text, Parity::Even, false});
                } while (ts_.peek().kind == Tok::Ident && !is_decl_keyword(ts_.peek().text));
            } else if (ts_.peek_keyword("ODD")) {
                ts_.next();
                do {
                    Token t = ts_.expect(Tok::Ident, "coordinate name");
                    check_name(ts_, t.text);
                    odd_.push_back(CoordinateSymbol{t.text, Parity::Odd, false});
                } while (ts_.peek().kind == Tok::Ident && !is_decl_keyword(ts_.peek().text));
            } else if (ts_.peek_keyword("FUNC")) {
                ts_.next();
                Token t = ts_.expect(Tok::Ident, "function name");
                check_name(ts_, t.text);
                ts_.expect(Tok::LParen, "'('");
                std::vector<std::string> deps;
                if (ts_.peek().kind != Tok::RParen) {
                    deps.push_back(ts_.expect(Tok::Ident, "coordinate name").text);
                    while (ts_.match(Tok::Comma))
                        deps.push_back(ts_.expect(Tok::Ident, "coordinate name").text);
                }
                ts_.expect(Tok::RParen, "')'");
                bool nonvanishing = false;
                if (ts_.peek_keyword("NONVANISHING")) {
                    ts_.next();
                    nonvanishing = true;
                }
                functions_.push_back(FunctionSymbol{t.text, std::move(deps), nonvanishing});
            } else {
                break;
            }
        }
        build_chart();

        ManifoldSpec spec{name,        *chart_,      std::nullopt, {}, std::nullopt,
                          std::nullopt, false,       std::nullopt, std::nullopt};

        while (!ts_.at_end()) {
            if (ts_.peek_keyword("METRIC")) {
                parse_metric(spec);
            } else if (ts_.peek_keyword("VF")) {
                parse_vf(spec);
            } else if (ts_.peek_keyword("STRUCTURE")) {
                parse_structure(spec);
            } else if (ts_.peek_keyword("CONNECTION")) {
                parse_connection(spec);
            } else if (ts_.peek_keyword("CONTRACTION")) {
                parse_contraction(spec);
            } else {
                ts_.fail("expected a declaration");
            }
        }

        if (!spec.structure_given && chart_->odd_count() == 1) {
            spec.Q = shander_Q(*chart_);
            spec.P = shander_P(*chart_);
        }
        return spec;
    }

private:
    static bool is_decl_keyword(const std::string& word) {
        return word == "EVEN" || word == "ODD" || word == "FUNC" || word == "METRIC" ||
               word == "VF" || word == "STRUCTURE" || word == "CONNECTION" ||
               word == "CONTRACTION";
    }

    void build_chart() {
        if (even_.empty()) ts_.fail("chart needs at least one EVEN coordinate");
        chart_.emplace(even_, odd_, functions_);
    }

    std::size_t coordinate_or_fail(const std::string& name) {
        auto idx = chart_->coordinate_index(name);
        if (!idx) throw UnknownSymbol(name);
        return *idx;
    }

    void parse_metric(ManifoldSpec& spec) {
        if (spec.metric) ts_.fail("duplicate METRIC block");
        ts_.next();
        ts_.expect(Tok::LBrace, "'{'");
        std::vector<PendingMetricEntry> entries;
        while (!ts_.match(Tok::RBrace)) {
            Token open = ts_.expect(Tok::LParen, "'(' or '}'");
            std::string a = ts_.expect(Tok::Ident, "coordinate name").text;
            ts_.expect(Tok::Comma, "','");
            std::string b = ts_.expect(Tok::Ident, "coordinate name").text;
            ts_.expect(Tok::RParen, "')'");
            ts_.expect(Tok::Equals, "'='");
            SuperFunction value = parse_expression(ts_, *chart_);
            ts_.match(Tok::Semicolon);
            entries.push_back(PendingMetricEntry{coordinate_or_fail(a), coordinate_or_fail(b),
                                                 std::move(value), open.line, open.column});
        }

        Tensor2 tensor(*chart_);
        std::vector<bool> given(chart_->coordinate_count() * chart_->coordinate_count(), false);
        auto slot = [&](std::size_t a, std::size_t b) {
            return a * chart_->coordinate_count() + b;
        };
        for (const auto& e : entries) {
            Parity expected = chart_->coordinate_parity(e.a) + chart_->coordinate_parity(e.b);
            if (!e.value.is_homogeneous(expected))
                throw ParityViolation("metric entry (" + chart_->coordinate(e.a).name + "," +
                                      chart_->coordinate(e.b).name + ") must be " +
                                      to_string(expected));
            if (given[slot(e.a, e.b)])
                throw SymmetryConflict("duplicate metric entry (" +
                                       chart_->coordinate(e.a).name + "," +
                                       chart_->coordinate(e.b).name + ")");
            // Graded symmetry forces the mirror entry.
            SuperFunction mirror = e.value;
            if (chart_->coordinate_parity(e.a) == Parity::Odd &&
                chart_->coordinate_parity(e.b) == Parity::Odd)
                mirror = -mirror;
            if (given[slot(e.b, e.a)] && !(tensor.entry(e.b, e.a) == mirror))
                throw SymmetryConflict("entry (" + chart_->coordinate(e.a).name + "," +
                                       chart_->coordinate(e.b).name +
                                       ") conflicts with its graded mirror");
            tensor.set_entry(e.a, e.b, e.value);
            given[slot(e.a, e.b)] = true;
            if (e.a != e.b && !given[slot(e.b, e.a)]) {
                tensor.set_entry(e.b, e.a, mirror);
                given[slot(e.b, e.a)] = true;
            }
        }
        spec.metric.emplace(std::move(tensor));
    }

    void parse_vf(ManifoldSpec& spec) {
        ts_.next();
        Token name = ts_.expect(Tok::Ident, "vector field name");
        if (name.text == "d" || name.text == "D")
            ts_.fail("'" + name.text + "' is reserved");
        for (const auto& [existing, f] : spec.vector_fields)
            if (existing == name.text) ts_.fail("duplicate vector field " + name.text);
        ts_.expect(Tok::Equals, "'='");
        VectorField f = parse_vector_field(ts_, *chart_);
        spec.vector_fields.emplace_back(name.text, std::move(f));
    }

    void parse_structure(ManifoldSpec& spec) {
        if (spec.structure_given) ts_.fail("duplicate STRUCTURE block");
        ts_.next();
        ts_.expect(Tok::LBrace, "'{'");
        while (!ts_.match(Tok::RBrace)) {
            Token which = ts_.expect(Tok::Ident, "'Q' or 'P'");
            if (which.text != "Q" && which.text != "P") ts_.fail("expected 'Q' or 'P'");
            ts_.expect(Tok::Equals, "'='");
            VectorField f = parse_vector_field(ts_, *chart_);
            ts_.expect(Tok::Semicolon, "';'");
            if (which.text == "Q")
                spec.Q = std::move(f);
            else
                spec.P = std::move(f);
        }
        spec.structure_given = true;
        if (chart_->odd_count() == 1) {
            if (!spec.Q) spec.Q = shander_Q(*chart_);
            if (!spec.P) spec.P = shander_P(*chart_);
        }
    }

    void parse_connection(ManifoldSpec& spec) {
        if (spec.connection) ts_.fail("duplicate CONNECTION block");
        ts_.next();
        ts_.expect(Tok::LBrace, "'{'");
        AffineConnection conn(*chart_);
        std::set<std::size_t> seen;
        while (!ts_.match(Tok::RBrace)) {
            ts_.expect_keyword("Gamma");
            ts_.expect(Tok::LParen, "'('");
            std::size_t c = coordinate_or_fail(ts_.expect(Tok::Ident, "coordinate").text);
            ts_.expect(Tok::Semicolon, "';'");
            std::size_t b = coordinate_or_fail(ts_.expect(Tok::Ident, "coordinate").text);
            ts_.expect(Tok::Comma, "','");
            std::size_t a = coordinate_or_fail(ts_.expect(Tok::Ident, "coordinate").text);
            ts_.expect(Tok::RParen, "')'");
            ts_.expect(Tok::Equals, "'='");
            SuperFunction value = parse_expression(ts_, *chart_);
            ts_.expect(Tok::Semicolon, "';'");
            const std::size_t n = chart_->coordinate_count();
            std::size_t key = (c * n + b) * n + a;
            if (!seen.insert(key).second) ts_.fail("duplicate Gamma component");
            Parity expected = chart_->coordinate_parity(a) + chart_->coordinate_parity(b) +
                              chart_->coordinate_parity(c);
            if (!value.is_homogeneous(expected))
                throw ParityViolation("Gamma component must be " +
                                      std::string(to_string(expected)));
            conn.set_gamma(c, b, a, std::move(value));
        }
        spec.connection = std::move(conn);
    }

    void parse_contraction(ManifoldSpec& spec) {
        if (spec.contraction) ts_.fail("duplicate CONTRACTION block");
        ts_.next();
        ts_.expect(Tok::LBrace, "'{'");
        RescaleWeights weights;
        while (!ts_.match(Tok::RBrace)) {
            if (ts_.peek_keyword("weights")) {
                ts_.next();
                ts_.expect(Tok::Colon, "':'");
                parse_weight_list(weights.coordinate_weights, true);
            } else if (ts_.peek_keyword("generators")) {
                ts_.next();
                ts_.expect(Tok::Colon, "':'");
                parse_weight_list(weights.generator_weights, false);
            } else {
                ts_.fail("expected 'weights' or 'generators'");
            }
        }
        spec.contraction = std::move(weights);
    }

    void parse_weight_list(std::map<std::string, int>& into, bool coordinates) {
        while (true) {
            Token name = ts_.expect(Tok::Ident, "name");
            if (coordinates) coordinate_or_fail(name.text);
            ts_.expect(Tok::Arrow, "'=>'");
            Token s = ts_.expect(Tok::Ident, "'s'");
            if (s.text != "s") ts_.fail("expected 's' (weights are integer powers of s; c = s^2)");
            ts_.expect(Tok::Caret, "'^'");
            bool negative = ts_.match(Tok::Minus);
            if (ts_.peek().kind != Tok::Number)
                throw NonIntegerWeight(name.text + " => s^" + ts_.peek().text);
            Token n = ts_.next();
            int k = std::stoi(n.text);
            if (negative) k = -k;
            if (into.count(name.text)) ts_.fail("duplicate weight for " + name.text);
            into[name.text] = k;
            if (ts_.match(Tok::Semicolon)) break;
            ts_.expect(Tok::Comma, "',' or ';'");
        }
    }

    TokenStream ts_;
    std::vector<CoordinateSymbol> even_, odd_;
    std::vector<FunctionSymbol> functions_;
    std::optional<Chart> chart_;
};

std::string print_vf(const VectorField& f) { return f.str(); }

} // namespace

const VectorField* ManifoldSpec::find_vector_field(const std::string& vf_name) const {
    for (const auto& [n, f] : vector_fields)
        if (n == vf_name) return &f;
    return nullptr;
}

std::string ManifoldSpec::print() const {
    std::ostringstream os;
    os << "MANIFOLD " << name << "\n";
    os << "EVEN";
    for (std::size_t i = 0; i < chart.even_count(); ++i)
        os << " " << chart.coordinate(i).name;
    os << "\n";
    if (chart.odd_count() > 0) {
        os << "ODD";
        for (std::size_t i = chart.even_count(); i < chart.coordinate_count(); ++i)
            os << " " << chart.coordinate(i).name;
        os << "\n";
    }
    for (const auto& f : chart.scope().functions()) {
        os << "FUNC " << f.name << "(";
        for (std::size_t i = 0; i < f.depends_on.size(); ++i)
            os << (i ? "," : "") << f.depends_on[i];
        os << ")";
        if (f.nonvanishing) os << " NONVANISHING";
        os << "\n";
    }
    if (metric) {
        os << "METRIC {\n";
        const std::size_t n = chart.coordinate_count();
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = a; b < n; ++b) {
                const SuperFunction& e = metric->entry(a, b);
                if (e.is_zero()) continue;
                os << "  (" << chart.coordinate(a).name << "," << chart.coordinate(b).name
                   << ") = " << e.str() << "\n";
            }
        os << "}\n";
    }
    for (const auto& [vf_name, f] : vector_fields)
        os << "VF " << vf_name << " = " << print_vf(f) << "\n";
    if (Q && P) {
        os << "STRUCTURE {\n";
        os << "  Q = " << print_vf(*Q) << ";\n";
        os << "  P = " << print_vf(*P) << ";\n";
        os << "}\n";
    }
    if (connection) {
        os << "CONNECTION {\n";
        const std::size_t n = chart.coordinate_count();
        for (std::size_t c = 0; c < n; ++c)
            for (std::size_t b = 0; b < n; ++b)
                for (std::size_t a = 0; a < n; ++a) {
                    const SuperFunction& e = connection->gamma(c, b, a);
                    if (e.is_zero()) continue;
                    os << "  Gamma(" << chart.coordinate(c).name << "; "
                       << chart.coordinate(b).name << ", " << chart.coordinate(a).name
                       << ") = " << e.str() << ";\n";
                }
        os << "}\n";
    }
    if (contraction) {
        os << "CONTRACTION {\n";
        os << "  weights:";
        bool first = true;
        for (const auto& [nm, k] : contraction->coordinate_weights) {
            os << (first ? " " : ", ") << nm << " => s^" << k;
            first = false;
        }
        os << ";\n  generators:";
        first = true;
        for (const auto& [nm, k] : contraction->generator_weights) {
            os << (first ? " " : ", ") << nm << " => s^" << k;
            first = false;
        }
        os << ";\n}\n";
    }
    return os.str();
}

bool ManifoldSpec::same_content(const ManifoldSpec& other) const {
    if (name != other.name || !chart.same_coordinates(other.chart)) return false;
    if (metric.has_value() != other.metric.has_value()) return false;
    if (metric && !(metric->tensor().str() == other.metric->tensor().str())) return false;
    if (vector_fields.size() != other.vector_fields.size()) return false;
    for (std::size_t i = 0; i < vector_fields.size(); ++i) {
        if (vector_fields[i].first != other.vector_fields[i].first) return false;
        if (!(vector_fields[i].second == other.vector_fields[i].second)) return false;
    }
    if (Q.has_value() != other.Q.has_value() || (Q && !(*Q == *other.Q))) return false;
    if (P.has_value() != other.P.has_value() || (P && !(*P == *other.P))) return false;
    if (connection.has_value() != other.connection.has_value()) return false;
    if (connection && !(connection->christoffel().str() ==
                        other.connection->christoffel().str()))
        return false;
    if (contraction.has_value() != other.contraction.has_value()) return false;
    if (contraction && (contraction->coordinate_weights != other.contraction->coordinate_weights ||
                        contraction->generator_weights != other.contraction->generator_weights))
        return false;
    return true;
}

ManifoldSpec parse_spec(const std::string& text) {
    return SpecParser(text).parse();
}

ManifoldSpec parse_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open spec file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_spec(buffer.str());
}

} // namespace scarr
