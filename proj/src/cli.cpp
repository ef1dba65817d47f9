#include "singcurve/cli.hpp"

#include <numeric>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "singcurve/curve_input.hpp"
#include "singcurve/enriques.hpp"
#include "singcurve/errors.hpp"
#include "singcurve/invariants.hpp"
#include "singcurve/newton_puiseux.hpp"
#include "singcurve/proof_trace.hpp"
#include "singcurve/resolution.hpp"

namespace singcurve {

namespace {

using nlohmann::ordered_json;

struct Options {
    long truncation = 32;
    long max_truncation = 4096;
    bool json = false;
    bool dot = false;
    std::string dot_file;
    unsigned long long seed = 1;
    long count = 100;
    std::vector<std::string> positional;
};

const char* kUsage =
    "usage: singcurve <command> [options] <input> [<input2>]\n"
    "\n"
    "commands:\n"
    "  branches <curve>           list the branch parametrizations\n"
    "  diagram <curve>            resolve and print the point diagram\n"
    "  invariants <curve>         per-branch numerical invariants\n"
    "  compare <curve> <curve>    decide equisingularity two ways\n"
    "  noether <curve> <curve>    intersection number with its point table\n"
    "  trace <curve> <curve>      stepwise rewrite of the second curve onto\n"
    "                             the first curve's infinitely near points\n"
    "  fuzz                       randomized cross-checks of the routes\n"
    "\n"
    "curve inputs: a polynomial in x and y, a parametrization\n"
    "  \"x(t) = ...; y(t) = ...\", a JSON document, a file holding one of\n"
    "  those, or - for stdin.\n"
    "\n"
    "options:\n"
    "  --truncation N       series terms kept when extracting branches (32)\n"
    "  --max-truncation N   precision ceiling for certification (4096,\n"
    "                       also via SINGCURVE_MAX_TRUNCATION)\n"
    "  --json               machine-readable output\n"
    "  --dot[=FILE]         diagram command: emit Graphviz instead of text\n"
    "  --seed N, --count N  fuzz command controls\n";

long parse_long(const std::string& text, const std::string& what) {
    try {
        size_t used = 0;
        long v = std::stol(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw Error("expected an integer for " + what + ", got '" + text + "'");
    }
}

Options parse_options(const std::vector<std::string>& args, size_t start) {
    Options o;
    if (const char* env = std::getenv("SINGCURVE_MAX_TRUNCATION")) {
        o.max_truncation = parse_long(env, "SINGCURVE_MAX_TRUNCATION");
    }
    for (size_t i = start; i < args.size(); ++i) {
        const std::string& a = args[i];
        auto value_of = [&](const std::string& name, std::string* out_val) {
            if (a == name) {
                if (i + 1 >= args.size()) throw Error("missing value for " + name);
                *out_val = args[++i];
                return true;
            }
            if (a.rfind(name + "=", 0) == 0) {
                *out_val = a.substr(name.size() + 1);
                return true;
            }
            return false;
        };
        std::string val;
        if (a == "--json") {
            o.json = true;
        } else if (a == "--dot") {
            o.dot = true;
        } else if (a.rfind("--dot=", 0) == 0) {
            o.dot = true;
            o.dot_file = a.substr(6);
        } else if (value_of("--truncation", &val)) {
            o.truncation = parse_long(val, "--truncation");
            if (o.truncation < 2) throw Error("--truncation must be at least 2");
        } else if (value_of("--max-truncation", &val)) {
            o.max_truncation = parse_long(val, "--max-truncation");
            if (o.max_truncation < 4) throw Error("--max-truncation must be at least 4");
        } else if (value_of("--seed", &val)) {
            o.seed = static_cast<unsigned long long>(parse_long(val, "--seed"));
        } else if (value_of("--count", &val)) {
            o.count = parse_long(val, "--count");
            if (o.count < 1) throw Error("--count must be positive");
        } else if (!a.empty() && a[0] == '-' && a != "-") {
            throw Error("unknown option '" + a + "'");
        } else {
            o.positional.push_back(a);
        }
    }
    return o;
}

ResolveOptions resolve_options(const Options& o) {
    ResolveOptions r;
    r.max_truncation = o.max_truncation;
    return r;
}

std::string fetch_text(const std::string& arg) {
    if (arg == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return buf.str();
    }
    std::ifstream in(arg);
    if (in.good()) {
        std::ostringstream buf;
        buf << in.rdbuf();
        return buf.str();
    }
    return arg;
}

CurveSpec load_spec(const std::string& arg, const Options& o) {
    std::string text = fetch_text(arg);
    size_t first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) throw SchemaError("empty curve input");
    if (text[first] == '{') return load_curve(text, o.truncation);
    if (text.find(';') != std::string::npos) {
        CurveSpec s;
        s.branches.push_back(parse_parametrization(text));
        s.branches.back().id = 0;
        validate_curve(s);
        return s;
    }
    BivariatePolynomial f = parse_polynomial(text);
    CurveSpec s;
    s.branches = branches(f, o.truncation);
    s.implicit_equation = std::move(f);
    validate_curve(s);
    return s;
}

ordered_json branch_json(const BranchParam& b) {
    ordered_json j;
    j["id"] = b.id;
    if (!b.label.empty()) j["label"] = b.label;
    j["x"] = b.x.str("t");
    j["y"] = b.y.str("t");
    j["exact"] = b.exact();
    if (!b.exact()) j["truncation"] = b.truncation_order();
    return j;
}

ordered_json curve_json(const CurveSpec& s) { return ordered_json::parse(save_curve(s)); }

ordered_json positions_json(const std::vector<Position>& chain) {
    ordered_json j = ordered_json::array();
    for (const auto& p : chain) j.push_back(p.str());
    return j;
}

int cmd_branches(const Options& o, std::ostream& out) {
    CurveSpec spec = load_spec(o.positional.at(0), o);
    if (o.json) {
        ordered_json j;
        j["branches"] = ordered_json::array();
        for (const auto& b : spec.branches) j["branches"].push_back(branch_json(b));
        out << j.dump(2) << "\n";
        return 0;
    }
    for (const auto& b : spec.branches) {
        out << "branch " << b.id;
        if (!b.label.empty()) out << " (" << b.label << ")";
        out << ": x(t) = " << b.x.str("t") << "; y(t) = " << b.y.str("t");
        if (b.exact()) {
            out << "  [exact]\n";
        } else {
            out << "  [truncated at " << b.truncation_order() << "]\n";
        }
    }
    return 0;
}

int cmd_diagram(const Options& o, std::ostream& out) {
    CurveSpec spec = load_spec(o.positional.at(0), o);
    Cluster cl = resolve(spec, resolve_options(o));
    EnriquesDiagram d = build_diagram(cl);
    if (o.dot) {
        std::string dot = to_dot(d);
        if (o.dot_file.empty()) {
            out << dot;
        } else {
            std::ofstream f(o.dot_file);
            if (!f.good()) throw Error("cannot write '" + o.dot_file + "'");
            f << dot;
            if (o.json) {
                ordered_json j;
                j["written"] = o.dot_file;
                out << j.dump(2) << "\n";
            } else {
                out << "wrote " << o.dot_file << "\n";
            }
        }
        return 0;
    }
    if (o.json) {
        ordered_json j;
        j["code"] = canonical_code(d);
        j["vertices"] = ordered_json::array();
        for (const auto& v : d.vertices) {
            ordered_json vj;
            vj["id"] = v.id;
            if (v.parent >= 0) {
                vj["parent"] = v.parent;
                vj["edge"] = edge_kind_name(v.inbound);
            }
            vj["level"] = v.level;
            vj["weight"] = v.weight();
            vj["position"] = v.parent >= 0 ? cl.point(v.id).position.str() : "origin";
            ordered_json bw;
            for (const auto& [br, w] : v.branch_weight) bw[std::to_string(br)] = w;
            vj["branches"] = bw;
            j["vertices"].push_back(vj);
        }
        out << j.dump(2) << "\n";
        return 0;
    }
    for (const auto& v : d.vertices) {
        out << "point " << v.id;
        if (v.parent >= 0) {
            out << " <- " << v.parent << " [" << edge_kind_name(v.inbound) << "] at "
                << cl.point(v.id).position.str();
        } else {
            out << " (origin)";
        }
        out << ", weight " << v.weight() << ", branches";
        for (const auto& [br, w] : v.branch_weight) out << " " << br << ":" << w;
        out << "\n";
    }
    return 0;
}

// Retry the exponent scan with a longer extraction when the curve carries its
// defining polynomial.
BranchParam with_certified_exponents(const CurveSpec& spec, const BranchParam& b,
                                     const Options& o) {
    BranchParam cur = b;
    while (true) {
        try {
            characteristic_exponents(cur);
            return cur;
        } catch (const PrecisionExhausted&) {
            if (!spec.implicit_equation || cur.exact()) throw;
            long t = cur.truncation_order();
            if (t >= o.max_truncation) throw;
            cur = extend_branch(*spec.implicit_equation, cur,
                                std::min(2 * t, o.max_truncation));
        }
    }
}

int cmd_invariants(const Options& o, std::ostream& out) {
    CurveSpec spec = load_spec(o.positional.at(0), o);
    Cluster full = resolve(spec, resolve_options(o));
    long satellites = 0;
    for (const auto& p : full.points) {
        if (is_satellite(p)) ++satellites;
    }

    ordered_json branches_out = ordered_json::array();
    std::ostringstream text;
    for (const auto& b : spec.branches) {
        BranchParam work = with_certified_exponents(spec, b, o);
        std::vector<long> exps = characteristic_exponents(work);
        CurveSpec one;
        one.branches = {work};
        one.implicit_equation = spec.implicit_equation;
        Cluster cl = resolve(one, resolve_options(o));
        std::vector<long> seq;
        for (int pid : cl.chain(work.id)) seq.push_back(cl.branch_multiplicity(pid, work.id));
        std::vector<long> predicted = multiplicity_walk(exps);
        if (predicted != seq) {
            throw InternalError("multiplicity sequence disagrees with the exponent walk for branch " +
                                std::to_string(b.id));
        }
        std::vector<long> gens = semigroup_generators(work);

        if (o.json) {
            ordered_json j;
            j["id"] = b.id;
            if (!b.label.empty()) j["label"] = b.label;
            j["multiplicity"] = exps.front();
            j["exponents"] = exps;
            j["sequence"] = seq;
            j["semigroup"] = gens;
            branches_out.push_back(j);
        } else {
            auto list = [](const std::vector<long>& v) {
                std::string s = "(";
                for (size_t i = 0; i < v.size(); ++i) {
                    if (i) s += ", ";
                    s += std::to_string(v[i]);
                }
                return s + ")";
            };
            text << "branch " << b.id;
            if (!b.label.empty()) text << " (" << b.label << ")";
            text << ":\n";
            text << "  multiplicity:        " << exps.front() << "\n";
            text << "  exponents:           " << list(exps) << "\n";
            text << "  multiplicity seq.:   " << list(seq) << "\n";
            text << "  semigroup:           " << list(gens) << "\n";
        }
    }
    if (o.json) {
        ordered_json j;
        j["points"] = full.points.size();
        j["satellite_points"] = satellites;
        j["branches"] = branches_out;
        out << j.dump(2) << "\n";
    } else {
        out << "resolution: " << full.points.size() << " points, " << satellites
            << " satellite\n";
        out << text.str();
    }
    return 0;
}

int cmd_compare(const Options& o, std::ostream& out, std::ostream& err) {
    CurveSpec a = load_spec(o.positional.at(0), o);
    CurveSpec b = load_spec(o.positional.at(1), o);
    bool by_diagram = equisingular_by_diagram(a, b);
    std::optional<BranchMatching> m = find_matching(a, b);
    if (by_diagram != m.has_value()) {
        err << "internal: the diagram route says " << (by_diagram ? "yes" : "no")
            << " but the branch route says " << (m ? "yes" : "no") << "\n";
        return 4;
    }
    if (o.json) {
        ordered_json j;
        j["equisingular"] = by_diagram;
        if (m) {
            ordered_json mm = ordered_json::array();
            for (const auto& [x, y] : *m) mm.push_back(ordered_json::array({x, y}));
            j["matching"] = mm;
        }
        out << j.dump(2) << "\n";
    } else if (by_diagram) {
        out << "equisingular; branch matching:";
        for (const auto& [x, y] : *m) out << " " << x << "->" << y;
        out << "\n";
    } else {
        out << "not equisingular\n";
    }
    return by_diagram ? 0 : 1;
}

int cmd_noether(const Options& o, std::ostream& out, std::ostream& err) {
    CurveSpec a = load_spec(o.positional.at(0), o);
    CurveSpec b = load_spec(o.positional.at(1), o);
    IntersectionReport rep = intersection_noether(a, b);

    // second route: eliminate each branch pair separately and sum
    bool checked = false;
    long pair_sum = 0;
    try {
        for (const auto& ba : a.branches) {
            for (const auto& bb : b.branches) {
                pair_sum += intersection_by_elimination(ba, bb);
            }
        }
        checked = true;
    } catch (const PrecisionExhausted&) {
    } catch (const NotApplicable&) {
    }
    if (checked && pair_sum != rep.total) {
        err << "internal: point table gives " << rep.total << " but elimination gives "
            << pair_sum << "\n";
        return 4;
    }

    if (o.json) {
        ordered_json j;
        j["total"] = rep.total;
        j["checked_by_elimination"] = checked;
        j["points"] = ordered_json::array();
        for (const auto& t : rep.terms) {
            ordered_json tj;
            tj["id"] = t.point;
            tj["level"] = rep.cluster.point(t.point).level;
            tj["chain"] = positions_json(rep.cluster.position_chain(t.point));
            tj["first"] = t.first;
            tj["second"] = t.second;
            tj["product"] = t.first * t.second;
            j["points"].push_back(tj);
        }
        out << j.dump(2) << "\n";
    } else {
        out << "intersection number: " << rep.total << "\n";
        for (const auto& t : rep.terms) {
            out << "  point " << t.point << " (level " << rep.cluster.point(t.point).level
                << "): " << t.first << " x " << t.second << " = " << t.first * t.second
                << "\n";
        }
        if (checked) out << "elimination route agrees\n";
    }
    return 0;
}

int cmd_trace(const Options& o, std::ostream& out) {
    CurveSpec a = load_spec(o.positional.at(0), o);
    CurveSpec b = load_spec(o.positional.at(1), o);
    Trace tr = build_trace(a, b);
    if (o.json) {
        ordered_json j;
        ordered_json mm = ordered_json::array();
        for (const auto& [x, y] : tr.matching) mm.push_back(ordered_json::array({x, y}));
        j["matching"] = mm;
        j["initial_count"] = tr.initial_count;
        j["moves"] = ordered_json::array();
        for (const auto& mv : tr.moves) {
            ordered_json mj;
            mj["pair"] = ordered_json::array({mv.first_branch, mv.second_branch});
            mj["point"] = positions_json(mv.point);
            mj["source"] = mv.source_line.str();
            mj["target"] = mv.target_line.str();
            if (mv.detour) {
                mj["detour_line"] = mv.detour_line.str();
                mj["detoured"] = mv.detoured;
            }
            mj["moved"] = mv.moved;
            mj["count_before"] = mv.count_before;
            mj["count_after"] = mv.count_after;
            mj["curve_after"] = curve_json(mv.after);
            j["moves"].push_back(mj);
        }
        j["final"] = curve_json(tr.final_curve);
        out << j.dump(2) << "\n";
    } else {
        out << "matched branches:";
        for (const auto& [x, y] : tr.matching) out << " " << x << "->" << y;
        out << "\n";
        out << "points apart: " << tr.initial_count << "\n";
        for (size_t i = 0; i < tr.moves.size(); ++i) {
            const auto& mv = tr.moves[i];
            out << "move " << i + 1 << ": at depth " << mv.point.size() << " carry line "
                << mv.source_line.str() << " onto " << mv.target_line.str();
            if (mv.detour) out << " (blockers first to " << mv.detour_line.str() << ")";
            out << "; " << mv.count_before << " -> " << mv.count_after << "\n";
        }
        out << "curves now share all points\n";
    }
    return 0;
}

// --- randomized cross-checks ---

Rational random_coeff(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-4, 4);
    std::uniform_int_distribution<long> den(1, 3);
    long n = num(rng);
    if (n == 0) n = 1;
    return Rational(n, den(rng));
}

BranchParam random_branch(std::mt19937_64& rng, int id) {
    while (true) {
        std::uniform_int_distribution<long> mult(1, 4);
        long m = mult(rng);
        std::map<long, Rational> y;
        std::uniform_int_distribution<long> extra(1, 3);
        std::uniform_int_distribution<long> gap(1, 4);
        long terms = extra(rng);
        long e = m + gap(rng);
        long g = m;
        for (long k = 0; k < terms; ++k) {
            y[e] = random_coeff(rng);
            g = std::gcd(g, e);
            e += gap(rng);
        }
        while (g != 1) {
            y[e] = random_coeff(rng);
            g = std::gcd(g, e);
            e += 1;
        }
        BranchParam b;
        b.id = id;
        b.x = PowerSeries::monomial(m, Rational(1));
        b.y = PowerSeries(std::move(y), std::nullopt);
        try {
            validate_branch(b);
        } catch (const Error&) {
            continue;
        }
        return b;
    }
}

CurveSpec random_curve(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> count(1, 3);
    int n = count(rng);
    while (true) {
        CurveSpec s;
        for (int i = 0; i < n; ++i) s.branches.push_back(random_branch(rng, i));
        bool distinct = true;
        try {
            for (size_t i = 0; i < s.branches.size() && distinct; ++i) {
                for (size_t j = i + 1; j < s.branches.size(); ++j) {
                    if (same_germ(s.branches[i], s.branches[j])) {
                        distinct = false;
                        break;
                    }
                }
            }
        } catch (const PrecisionExhausted&) {
            distinct = false;
        }
        if (distinct) return s;
    }
}

std::string fuzz_failure(const CurveSpec& a, const CurveSpec& b, const std::string& what) {
    ordered_json j;
    j["failure"] = what;
    j["first"] = curve_json(a);
    j["second"] = curve_json(b);
    return j.dump(2);
}

// one full consistency pass; returns an explanation on failure
std::string fuzz_check(const CurveSpec& a, const CurveSpec& b) {
    try {
        bool r1 = equisingular_by_diagram(a, b);
        bool r2 = equisingular_by_branches(a, b);
        if (r1 != r2) return "equisingularity routes disagree";

        IntersectionReport rep = intersection_noether(a, b);
        long pair_sum = 0;
        bool computable = true;
        try {
            for (const auto& ba : a.branches) {
                for (const auto& bb : b.branches) {
                    pair_sum += intersection_by_elimination(ba, bb);
                }
            }
        } catch (const NotApplicable&) {
            computable = false;
        }
        if (computable && pair_sum != rep.total) return "intersection routes disagree";

        IntersectionReport swapped = intersection_noether(b, a);
        if (swapped.total != rep.total) return "intersection is not symmetric";
        return "";
    } catch (const CommonBranch&) {
        return "";  // the two random curves happened to share a branch
    } catch (const PrecisionExhausted&) {
        return "";  // honest refusal is fine for random inputs
    }
}

int cmd_fuzz(const Options& o, std::ostream& out, std::ostream& err) {
    std::mt19937_64 rng(o.seed);
    for (long iter = 0; iter < o.count; ++iter) {
        CurveSpec a = random_curve(rng);
        CurveSpec b = random_curve(rng);
        std::string what = fuzz_check(a, b);
        if (what.empty()) continue;

        // shrink: drop branches while the failure persists
        bool shrunk = true;
        while (shrunk) {
            shrunk = false;
            for (size_t side = 0; side < 2 && !shrunk; ++side) {
                CurveSpec& victim = side == 0 ? a : b;
                if (victim.branches.size() <= 1) continue;
                for (size_t i = 0; i < victim.branches.size(); ++i) {
                    CurveSpec trial_a = a;
                    CurveSpec trial_b = b;
                    CurveSpec& tv = side == 0 ? trial_a : trial_b;
                    tv.branches.erase(tv.branches.begin() + static_cast<long>(i));
                    if (fuzz_check(trial_a, trial_b) == what) {
                        a = std::move(trial_a);
                        b = std::move(trial_b);
                        shrunk = true;
                        break;
                    }
                }
            }
        }
        err << "fuzz failure (seed " << o.seed << ", case " << iter << "):\n"
            << fuzz_failure(a, b, what) << "\n";
        return 4;
    }
    out << "fuzz: " << o.count << " cases ok (seed " << o.seed << ")\n";
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    if (args.empty()) {
        err << kUsage;
        return 2;
    }
    const std::string& cmd = args[0];
    if (cmd == "help" || cmd == "--help" || cmd == "-h") {
        out << kUsage;
        return 0;
    }
    try {
        Options o = parse_options(args, 1);
        auto need = [&](size_t n) {
            if (o.positional.size() != n) {
                throw Error("command '" + cmd + "' expects " + std::to_string(n) +
                            " input(s), got " + std::to_string(o.positional.size()));
            }
        };
        if (cmd == "branches") {
            need(1);
            return cmd_branches(o, out);
        }
        if (cmd == "diagram") {
            need(1);
            return cmd_diagram(o, out);
        }
        if (cmd == "invariants") {
            need(1);
            return cmd_invariants(o, out);
        }
        if (cmd == "compare") {
            need(2);
            return cmd_compare(o, out, err);
        }
        if (cmd == "noether") {
            need(2);
            return cmd_noether(o, out, err);
        }
        if (cmd == "trace") {
            need(2);
            return cmd_trace(o, out);
        }
        if (cmd == "fuzz") {
            need(0);
            return cmd_fuzz(o, out, err);
        }
        err << "unknown command '" << cmd << "'\n" << kUsage;
        return 2;
    } catch (const PrecisionExhausted& e) {
        err << "precision: " << e.what() << "\n";
        return 3;
    } catch (const NotEquisingular& e) {
        err << e.what() << "\n";
        return 1;
    } catch (const InternalError& e) {
        err << "internal: " << e.what() << "\n";
        return 4;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "internal: " << e.what() << "\n";
        return 4;
    }
}

}  // namespace singcurve
