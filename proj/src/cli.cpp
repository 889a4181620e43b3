#include "squaretile/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

#include "squaretile/counts.hpp"
#include "squaretile/orbits.hpp"
#include "squaretile/trace.hpp"

namespace squaretile::cli {

namespace {

using ojson = nlohmann::ordered_json;

struct Globals {
    bool json = false;
    int jobs = 1;
    std::string cache;
    int max_squares = 200;
    std::size_t max_orbit = 1000000;

    OrbitOptions orbit_options() const {
        OrbitOptions o;
        o.jobs = jobs;
        o.max_squares = max_squares;
        o.max_orbit_size = max_orbit;
        o.cache_dir = cache;
        if (o.cache_dir.empty())
            if (const char* env = std::getenv(kCacheEnv)) o.cache_dir = env;
        return o;
    }
};

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream os;
        os << std::cin.rdbuf();
        return os.str();
    }
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorKind::IoFailure, "cannot read " + path);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

/// "cyl,x,y" with rational coordinates, e.g. "6,1/3,0".
SurfPoint parse_point(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');) parts.push_back(item);
    if (parts.size() != 3) throw Error(ErrorKind::InvalidArgument, "points are written cyl,x,y");
    SurfPoint p;
    try {
        p.cyl = std::stoi(parts[0]);
    } catch (const std::exception&) {
        throw Error(ErrorKind::InvalidArgument, "bad cylinder index '" + parts[0] + "'");
    }
    p.x = parse_rational(parts[1]);
    p.y = parse_rational(parts[2]);
    p.denom = static_cast<int>(to_i64(lcm(denominator(p.x), denominator(p.y))));
    return p;
}

std::string point_text(const SurfPoint& p) {
    return std::to_string(p.cyl) + "," + to_string(p.x) + "," + to_string(p.y);
}

ojson crossings_json(const TraceResult& r) { return ojson::parse(to_json(r))["crossings"]; }

int cmd_cylinders(const Globals& g, int d, std::ostream& out) {
    auto cyls = cylinders(d);
    long long area = 0;
    for (const CylSpec& c : cyls) area += static_cast<long long>(c.W) * c.H;
    if (g.json) {
        ojson j;
        j["d"] = d;
        auto& arr = j["cylinders"] = ojson::array();
        for (const CylSpec& c : cyls) arr.push_back(ojson::parse(to_json(c)));
        j["area"] = area;
        out << j.dump(2) << "\n";
        return kOk;
    }
    out << cyls.size() << " cylinders for d = " << d << "\n";
    for (std::size_t i = 0; i < cyls.size(); ++i) {
        const CylSpec& c = cyls[i];
        out << "  " << i << "  " << cyl_kind_name(c.kind) << " (" << c.w1 << "," << c.s1 << "," << c.T1 << ") ("
            << c.w2 << "," << c.s2 << "," << c.T2 << ")  W = " << c.W << ", H = " << c.H << "\n";
    }
    out << "total area " << area << "\n";
    return kOk;
}

int cmd_tiling(const Globals& g, int d, const std::string& svg, const std::string& json_path, std::ostream& out) {
    Tiling t = build(d);
    if (!svg.empty()) write_file(svg, tiling_to_svg(t));
    if (!json_path.empty()) write_file(json_path, tiling_to_json(t));
    Census c = vertex_census(t);
    auto st = stories(t);
    if (g.json) {
        ojson j;
        j["d"] = d;
        j["squares"] = t.squares.size();
        j["genus"] = genus(t);
        j["census"] = {{"zeros", c.zeros}, {"noncusp_poles", c.noncusp}, {"cusp_poles", c.cusps}, {"regular", c.regular}};
        auto& arr = j["stories"] = ojson::array();
        for (const Story& s : st) arr.push_back({{"index", s.index}, {"cylinders", s.cylinders}});
        out << j.dump(2) << "\n";
        return kOk;
    }
    out << "tiling of X(" << d << "): " << t.squares.size() << " squares in " << t.cyls.size() << " cylinders, genus "
        << genus(t) << "\n";
    out << "  zeros " << c.zeros << ", non-cusp poles " << c.noncusp << ", cusp poles " << c.cusps << ", regular "
        << c.regular << "\n";
    out << "  " << st.size() << (st.size() == 1 ? " story" : " stories") << "\n";
    for (const Story& s : st) {
        out << "    story " << s.index << ":";
        for (int ci : s.cylinders) out << " " << ci;
        out << "\n";
    }
    return kOk;
}

int cmd_points(const Globals& g, int d, int n, std::ostream& out) {
    Tiling t = build(d);
    auto pts = rational_points(t, n);
    if (g.json) {
        ojson arr = ojson::array();
        for (const SurfPoint& p : pts) arr.push_back(ojson::parse(to_json(p)));
        out << arr.dump(2) << "\n";
        return kOk;
    }
    out << pts.size() << " primitive " << n << "-rational points on X(" << d << ")\n";
    for (const SurfPoint& p : pts) out << "  " << point_text(p) << "\n";
    return kOk;
}

template <class T, class Show>
int print_orbits(const Globals& g, int d, int n, std::size_t total, const std::vector<Orbit<T>>& orbits, Show show,
                 std::ostream& out) {
    if (g.json) {
        ojson j;
        j["d"] = d;
        j["n"] = n;
        j["total"] = total;
        auto& arr = j["orbits"] = ojson::array();
        for (const auto& o : orbits)
            arr.push_back({{"size", o.members.size()}, {"least", ojson::parse(show(o.members.front()))},
                           {"witness", o.witness.str()}});
        out << j.dump(2) << "\n";
        return kOk;
    }
    out << "ST(" << d << "," << n << "): " << total << " surfaces, " << orbits.size()
        << (orbits.size() == 1 ? " orbit" : " orbits") << "\n";
    for (std::size_t i = 0; i < orbits.size(); ++i)
        out << "  orbit " << i + 1 << ": size " << orbits[i].members.size() << ", least "
            << show(orbits[i].members.front()) << ", witness " << orbits[i].witness.str() << "\n";
    return kOk;
}

int cmd_orbits(const Globals& g, int d, int n, const std::string& model, std::ostream& out) {
    OrbitOptions opt = g.orbit_options();
    if (model == "points") {
        Tiling t = build(d);
        auto pts = rational_points(t, n);
        auto orbits = point_orbit_partition(t, pts, opt);
        return print_orbits(g, d, n, pts.size(), orbits, [](const SurfPoint& p) { return to_json(p); }, out);
    }
    EnumerateOptions eo;
    eo.max_squares = g.max_squares;
    auto elems = enumerate(d, n, eo);
    auto orbits = orbit_partition(elems, opt);
    return print_orbits(g, d, n, elems.size(), orbits, [](const Origami& o) { return to_json(o); }, out);
}

int cmd_verify_parity(const Globals& g, int d, int n, std::ostream& out) {
    OrbitReport r = verify_parity(d, n, g.orbit_options());
    out << (g.json ? to_json(r) : to_text(r));
    return r.verdict == Verdict::Violates ? kMismatch : kOk;
}

int cmd_verify_counts(const Globals& g, int d, std::optional<int> n, std::ostream& out) {
    CountTable t = table(d, n);
    EnumerateOptions eo;
    eo.max_squares = g.max_squares;
    struct Row {
        int row;
        Rational expected;
        std::size_t found;
    };
    std::vector<Row> rows{{5, *t.row[5], enumerate(d, 0, eo).size()}, {8, *t.row[8], enumerate(d, 1, eo).size()}};
    if (n) rows.push_back({9, *t.row[9], enumerate(d, *n, eo).size()});
    auto failures = identity_failures(t);
    bool ok = failures.empty();
    for (const Row& r : rows) ok = ok && r.expected == Rational(r.found);
    if (g.json) {
        ojson j;
        j["d"] = d;
        j["n"] = n ? ojson(*n) : ojson();
        auto& arr = j["rows"] = ojson::array();
        for (const Row& r : rows)
            arr.push_back({{"row", r.row}, {"table", to_string(r.expected)}, {"enumerated", r.found}});
        j["identity_failures"] = failures;
        j["verdict"] = ok ? "matches" : "violates";
        out << j.dump(2) << "\n";
    } else {
        out << "counts for d = " << d;
        if (n) out << ", n = " << *n;
        out << ": " << (ok ? "matches" : "violates") << "\n";
        for (const Row& r : rows)
            out << "  row " << r.row << " (" << count_row_name(r.row) << "): table " << to_string(r.expected)
                << ", enumerated " << r.found << (r.expected == Rational(r.found) ? "" : "  MISMATCH") << "\n";
        out << "  identities: " << (failures.empty() ? "all hold" : "failing") << "\n";
        for (const auto& f : failures) out << "    " << f << "\n";
    }
    return ok ? kOk : kMismatch;
}

int cmd_counts(const Globals& g, int d, std::optional<int> n, std::ostream& out) {
    CountTable t = table(d, n);
    out << (g.json ? to_json(t) + "\n" : to_text(t));
    return kOk;
}

int cmd_act(const Globals& g, const std::string& word, const std::string& file, bool allow_nonreduced,
            std::ostream& out) {
    SL2Word w = SL2Word::parse(word);
    Origami o = origami_from_json(read_input(file));
    if (o.n_squares() > g.max_squares)
        throw Error(ErrorKind::BudgetExceeded, "origami exceeds the square cap");
    if (allow_nonreduced) {
        if (!is_transitive(o)) throw Error(ErrorKind::NotConnected, "origami is not connected");
    } else {
        validate(o);
    }
    Origami image = act(w, o);
    if (g.json) {
        out << to_json(image) << "\n";
        return kOk;
    }
    TypeSig sig = classify(image);
    out << to_json(image) << "\n";
    out << "degree " << sig.degree << ", torsion " << sig.torsion << ", stratum "
        << (sig.stratum == Stratum::H2 ? "H(2)" : "H(1,1)") << "\n";
    return kOk;
}

int cmd_trace(const Globals& g, int d, const std::string& start, const std::vector<int>& dir,
              const std::string& length, const std::string& target, std::ostream& out) {
    if (dir.size() != 2) throw Error(ErrorKind::InvalidArgument, "--dir takes two integers p q");
    Tiling t = build(d);
    TraceOptions opt;
    opt.max_length = parse_rational(length);
    if (!target.empty()) opt.target = parse_point(target);
    TraceResult r = trace(t, parse_point(start), dir[0], dir[1], opt);
    if (g.json) {
        out << ojson::parse(to_json(r)).dump(2) << "\n";
        return kOk;
    }
    out << trace_stop_name(r.stop) << " at " << point_text(r.end);
    if (r.end_vertex >= 0) out << " (" << vertex_class_name(t.vertices[r.end_vertex].cls) << ")";
    out << " after length " << to_string(r.length) << ", " << r.crossings.size() << " crossings, final direction ("
        << r.final_dir[0] << "," << r.final_dir[1] << ")\n";
    return kOk;
}

int cmd_illuminate(const Globals& g, int d, int n, int bound, bool vertices, std::ostream& out) {
    Tiling t = build(d);
    std::vector<SurfPoint> targets;
    if (vertices)
        for (const VertexRecord& v : t.vertices)
            if (v.cls == VertexClass::Zero || v.cls == VertexClass::NonCuspPole)
                targets.push_back({v.cyl, Rational(v.x), Rational(v.y), 1});
    if (n >= 2)
        for (const SurfPoint& p : rational_points(t, n)) targets.push_back(p);
    auto ws = illuminate(t, targets, cusp_sources(t), bound, g.jobs);
    std::size_t lit = 0;
    for (const auto& w : ws) lit += w.has_value();
    if (g.json) {
        ojson j;
        j["d"] = d;
        j["n"] = n;
        j["bound"] = bound;
        j["illuminated"] = lit;
        j["targets"] = targets.size();
        auto& arr = j["witnesses"] = ojson::array();
        for (std::size_t i = 0; i < targets.size(); ++i) {
            ojson e;
            e["target"] = ojson::parse(to_json(targets[i]));
            if (ws[i]) {
                ojson w = ojson::parse(to_json(*ws[i]));
                w["crossings"] = crossings_json(replay(t, *ws[i], targets[i]));
                e["witness"] = w;
            } else {
                e["witness"] = nullptr;
            }
            arr.push_back(e);
        }
        out << j.dump(2) << "\n";
        return kOk;
    }
    out << "X(" << d << "): " << lit << " of " << targets.size() << " targets illuminated from "
        << cusp_sources(t).size() << " cusp poles with |p|,|q| <= " << bound << "\n";
    for (std::size_t i = 0; i < targets.size(); ++i) {
        out << "  " << point_text(targets[i]) << "  ";
        if (ws[i])
            out << "from vertex " << ws[i]->source_vertex << " (" << point_text(ws[i]->source) << ") direction ("
                << ws[i]->p << "," << ws[i]->q << ") length " << to_string(ws[i]->length) << "\n";
        else
            out << "Unknown\n";
    }
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Square-tilings of the absolute period leaves of genus-2 surfaces"};
    app.name("squaretile");
    app.require_subcommand(1);
    Globals g;
    app.add_flag("--json", g.json, "Emit JSON instead of text");
    app.add_option("--jobs", g.jobs, "Worker threads")->check(CLI::Range(1, 256));
    app.add_option("--cache", g.cache, std::string("Orbit cache directory (default: $") + kCacheEnv + ")");
    app.add_option("--max-squares", g.max_squares, "Square cap for enumeration")->check(CLI::PositiveNumber);
    app.add_option("--max-orbit", g.max_orbit, "Orbit size cap")->check(CLI::PositiveNumber);

    int d = 0, n = 0, bound = 20;
    std::optional<int> n_opt;
    const auto degree = CLI::Range(2, 1000);

    auto* c_cyl = app.add_subcommand("cylinders", "List the horizontal cylinders of X(d)");
    c_cyl->add_option("d", d, "Degree")->required()->check(degree);

    std::string svg, json_out;
    auto* c_til = app.add_subcommand("tiling", "Build the square-tiling of X(d)");
    c_til->add_option("d", d, "Prime degree (or 2)")->required()->check(degree);
    c_til->add_option("--svg", svg, "Write an SVG picture");
    c_til->add_option("--json-out", json_out, "Write the tiling as JSON");

    auto* c_pts = app.add_subcommand("points", "List the primitive n-rational points of X(d)");
    c_pts->add_option("d", d)->required()->check(degree);
    c_pts->add_option("n", n)->required()->check(CLI::Range(2, 1000));

    std::string model = "origami";
    auto* c_orb = app.add_subcommand("orbits", "SL2(Z) orbits on ST(d,n)");
    c_orb->add_option("d", d)->required()->check(degree);
    c_orb->add_option("n", n)->required()->check(CLI::Range(0, 1000));
    c_orb->add_option("--model", model, "origami or points")->check(CLI::IsMember({"origami", "points"}));

    auto* c_ver = app.add_subcommand("verify", "Check predictions against enumeration");
    c_ver->require_subcommand(1);
    auto* c_par = c_ver->add_subcommand("parity", "Orbit count of ST(d,n) against the parity prediction");
    c_par->add_option("d", d)->required()->check(degree);
    c_par->add_option("n", n)->required()->check(CLI::Range(0, 1000));
    auto* c_vcn = c_ver->add_subcommand("counts", "Table rows against enumeration");
    c_vcn->add_option("d", d)->required()->check(degree);
    c_vcn->add_option("n", n_opt)->check(CLI::Range(2, 1000));

    auto* c_cnt = app.add_subcommand("counts", "Print the count table of X(d)");
    c_cnt->add_option("d", d)->required()->check(degree);
    c_cnt->add_option("n", n_opt)->check(CLI::Range(2, 1000));

    std::string word, file;
    bool allow_nonreduced = false;
    auto* c_act = app.add_subcommand("act", "Apply an SL2(Z) word to an origami given as JSON");
    c_act->add_option("word", word, "Letters S, s (inverse), R, r (inverse)")->required();
    c_act->add_option("file", file, "Origami JSON file, - for stdin")->required();
    c_act->add_flag("--allow-nonreduced", allow_nonreduced, "Accept any connected origami");

    std::string start, length = "100", target;
    std::vector<int> dir;
    auto* c_tr = app.add_subcommand("trace", "Trace a straight segment on the tiling of X(d)");
    c_tr->add_option("d", d)->required()->check(degree);
    c_tr->add_option("--from", start, "Start point cyl,x,y")->required();
    c_tr->add_option("--dir", dir, "Direction p q")->required()->expected(2);
    c_tr->add_option("--length", length, "Length bound (parameter units)");
    c_tr->add_option("--to", target, "Target point cyl,x,y");

    bool vertices = false;
    auto* c_ill = app.add_subcommand("illuminate", "Search cusp witnesses for the n-rational points of X(d)");
    c_ill->add_option("d", d)->required()->check(degree);
    c_ill->add_option("n", n, "Torsion order (0 or 1: vertices only)")->required()->check(CLI::Range(0, 1000));
    c_ill->add_option("--bound", bound, "Direction bound B")->check(CLI::Range(1, 10000));
    c_ill->add_flag("--vertices", vertices, "Also target zeros and non-cusp poles");

    // CLI11 parses a reversed argument vector
    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    }

    try {
        if (c_cyl->parsed()) return cmd_cylinders(g, d, out);
        if (c_til->parsed()) return cmd_tiling(g, d, svg, json_out, out);
        if (c_pts->parsed()) return cmd_points(g, d, n, out);
        if (c_orb->parsed()) return cmd_orbits(g, d, n, model, out);
        if (c_par->parsed()) return cmd_verify_parity(g, d, n, out);
        if (c_vcn->parsed()) return cmd_verify_counts(g, d, n_opt, out);
        if (c_cnt->parsed()) return cmd_counts(g, d, n_opt, out);
        if (c_act->parsed()) return cmd_act(g, word, file, allow_nonreduced, out);
        if (c_tr->parsed()) return cmd_trace(g, d, start, dir, length, target, out);
        if (c_ill->parsed()) return cmd_illuminate(g, d, n, bound, vertices, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kUsage;
    }
    err << app.help();
    return kUsage;
}

}  // namespace squaretile::cli
