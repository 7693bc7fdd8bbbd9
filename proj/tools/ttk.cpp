#include <iostream>
#include <random>

#include "CLI11.hpp"
#include "tt/bicombing.hpp"
#include "tt/canonical.hpp"
#include "tt/catalog.hpp"
#include "tt/collapse.hpp"
#include "tt/cubical.hpp"
#include "tt/dual.hpp"
#include "tt/measures.hpp"
#include "tt/serialize.hpp"
#include "tt/strips.hpp"

using namespace tt;

namespace {

struct violation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

track load_track(const std::string& path) { return parse_track(read_file(path)); }
weights load_guide(const std::string& path, const track& t) { return parse_weights(read_file(path), t.nbr); }

std::string yes(bool b) { return b ? "yes" : "no"; }

// square root given by its square: the decimal is truncated, the exact square follows
std::string root(const rat& sq) { return decimal(rat_sqrt_floor(sq, 6), 6) + " sq=" + to_string(sq); }

int parse_switch(const std::string& s) {
    std::string body = (!s.empty() && s[0] == 's') ? s.substr(1) : s;
    if (body.empty() || body.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument("bad switch '" + s + "'");
    return std::stoi(body);
}

connector parse_connector(const std::string& s) {
    auto c = s.find(':');
    if (c == std::string::npos) throw std::invalid_argument("connector must read large:small");
    return {parse_slot(s.substr(0, c)), parse_slot(s.substr(c + 1))};
}

struct strip_args {
    std::string track_path, guide_path, seq;
    int radius = 4;
    int jobs = 1;
};

void strip_options(CLI::App* sub, strip_args& a, bool positional_track) {
    if (positional_track)
        sub->add_option("track", a.track_path, "base track")->required();
    else
        sub->add_option("--strip", a.track_path, "base track")->required();
    sub->add_option("--guide", a.guide_path, "guide measure; the strip is guided by it");
    sub->add_option("--seq", a.seq, "target splitting sequence, e.g. \"e3R e5L\"");
    sub->add_option("--radius", a.radius, "depth cap, negative for none");
    sub->add_option("--jobs", a.jobs, "accepted for compatibility; work is sequential");
}

flat_strip make_strip(const strip_args& a) {
    track t = load_track(a.track_path);
    if (!a.guide_path.empty()) return enumerate_guided_strip(t, load_guide(a.guide_path, t), a.radius);
    if (!a.seq.empty()) return enumerate_strip(t, parse_sequence(a.seq), a.radius);
    throw std::invalid_argument("give --guide or --seq");
}

void run_validate(const std::string& path) {
    track t = load_track(path);
    auto rep = validate(t, infer_surface(t));
    for (auto& s : rep.structural) std::cout << "structural " << s << "\n";
    for (auto& s : rep.violations) std::cout << "violation " << s << "\n";
    if (!rep.ok()) throw violation("track is not valid");
    std::cout << "OK\n";
}

void run_regions(const std::string& path) {
    track t = load_track(path);
    auto fm = trace_regions(t);
    std::cout << "regions " << fm.regions.size() << "\n";
    for (size_t i = 0; i < fm.regions.size(); ++i) {
        auto& r = fm.regions[i];
        std::cout << "region " << i << " cusps=" << r.cusps << " punctures=" << r.punctures << " sides=";
        for (size_t k = 0; k < r.sides.size(); ++k) {
            std::cout << (k ? "|" : "");
            for (size_t j = 0; j < r.sides[k].size(); ++j) std::cout << (j ? "," : "") << r.sides[k][j];
        }
        std::cout << "\n";
    }
}

void run_measures(const std::string& path, const std::string& guide_path) {
    track t = load_track(path);
    auto rep = completeness_surrogate(t);
    std::cout << "maximal " << yes(rep.maximal) << "\n"
              << "generic " << yes(rep.generic) << "\n"
              << "recurrent " << yes(rep.recurrent) << "\n"
              << "transversely-recurrent " << yes(rep.transversely_recurrent) << "\n";
    if (auto w = positive_transverse(t)) std::cout << "transverse-witness\n" << print_weights(*w);
    if (auto w = positive_tangential(t, !t.bigons)) std::cout << "tangential-witness\n" << print_weights(*w);
    if (guide_path.empty()) return;
    weights mu = load_guide(guide_path, t);
    bool bad = false;
    for (int s = 0; s < t.nsw(); ++s) {
        rat r = switch_residual(t, mu, s);
        if (r != 0) {
            std::cout << "switch-residual s" << s << " " << to_string(r) << "\n";
            bad = true;
        }
    }
    for (auto& w : mu) bad = bad || w < 0;
    std::cout << "guide " << (bad ? "violates" : "satisfies") << " switch conditions\n";
    if (bad) throw violation("guide is not a transverse measure");
}

void run_links(const flat_strip& s) {
    auto c = build_complex(s, true);
    bool all = true;
    int undetermined = 0;
    for (int v = 0; v < (int)c.points.size(); ++v) {
        if (!c.known(c.depth[v])) continue;
        auto l = link(c, v);
        bool f = is_flag(l);
        all = all && f;
        undetermined += l.undetermined;
        std::cout << "link " << v << " vertices=" << l.verts.size() << " simplices=" << l.simplices.size()
                  << " missing=" << l.missing.size() << " undetermined=" << l.undetermined << " flag=" << yes(f) << "\n";
    }
    std::cout << "flag-all " << yes(all) << " undetermined=" << undetermined << "\n";
    if (!all) throw violation("a link is not flag");
}

void run_stats(const flat_strip& s) {
    auto c = build_complex(s, true);
    std::cout << "vertices " << s.vertices.size() << "\n"
              << "edges " << s.edges.size() << "\n"
              << "truncated " << yes(s.truncated) << "\n"
              << "path-conflicts " << s.path_conflicts << "\n"
              << "dimension " << c.dimension() << "\n"
              << "cubes";
    for (auto& k : c.cubes) std::cout << " " << k.size();
    std::cout << "\n"
              << "disconnected-halfspaces " << disconnected_halfspaces(c) << "\n";
}

void run_qi(const flat_strip& s) {
    auto q = qi_constants(s);
    std::cout << "pairs " << q.pairs << "\n"
              << "c_upper " << root(q.upper_sq) << "\n"
              << "c_lower " << root(q.lower_sq) << "\n";
}

void run_bicombe(const std::string& a_path, const std::string& b_path, int depth) {
    track a = load_track(a_path), b = load_track(b_path);
    auto seq = find_sequence(a, b, depth);
    if (!seq) throw violation("no splitting sequence of length <= " + std::to_string(depth) + " leads to the second track");
    auto ts = tight_multi_sequence(a, *seq);
    std::cout << "sequence " << print_sequence(*seq) << "\n"
              << "stations " << ts.stations.size() << "\n";
    for (size_t k = 0; k < ts.stations.size(); ++k) {
        std::cout << "station " << k << " splits=";
        std::cout << (k == 0 ? "-" : print_sequence(ts.steps[k - 1]));
        std::cout << " large=" << large_branches(ts.stations[k]).size() << "\n";
    }
    if (!same_labeled(ts.stations.back(), b)) throw violation("tight sequence does not end at the second track");
}

void run_twist(const std::string& path, const std::string& conn, int rounds) {
    track t = load_track(path);
    connector c = parse_connector(conn);
    auto circle = connector_circle(t, c);
    auto res = circle_multi_split(t, circle, rounds);
    bool match = res.k > 0 && canonical_code(res.t) == canonical_code(t);
    std::cout << "k " << res.k << "\n"
              << "first-recurrence " << res.first_recurrence << "\n"
              << "sign " << (twist_sign(t, c) > 0 ? "+1" : "-1") << "\n"
              << "canonical-match " << yes(match) << "\n";
    if (!match) throw violation("canonical form did not recur within " + std::to_string(rounds) + " rounds");
}

void run_dual(const std::string& path, const std::string& guide_path, bool census_only) {
    track t = load_track(path);
    auto d = dual_track(t);
    if (census_only) {
        auto c = region_census(d.dual);
        std::cout << "trigons " << c.trigons << "\nmonogons " << c.monogons << "\nbigons " << c.bigons
                  << "\nother " << c.other << "\n";
        return;
    }
    if (guide_path.empty()) {
        std::cout << print_track(d.dual);
        return;
    }
    auto s = sneak_up(d, load_guide(guide_path, t));
    std::cout << print_weights(s.mu_star);
}

void run_collapse_lambda(const std::string& path, const std::string& guide_path, unsigned long long seed, int budget,
                         bool print) {
    track t = load_track(path);
    auto d = dual_track(t);
    std::mt19937_64 rng(seed);
    auto q = dual_quadruple(d, load_guide(guide_path, t), rng);
    auto run = lambda_collapse(q, budget);
    for (size_t k = 0; k < run.steps.size(); ++k) std::cout << trace_line((int)k, run.steps[k]) << "\n";
    std::cout << "budget " << run.budget << "\n"
              << "generic " << yes(run.report.generic) << "\n"
              << "maximal " << yes(run.report.maximal) << "\n"
              << "transversely-recurrent " << yes(run.report.transversely_recurrent) << "\n"
              << "carries " << yes(run.carries) << "\n";
    if (print) std::cout << print_track(run.t);
    if (!run.report.generic || !run.report.maximal || !run.report.transversely_recurrent || !run.carries)
        throw violation("collapsed track fails its checks");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"train track toolkit"};
    app.require_subcommand(1);

    std::string track_path, guide_path, branch, direction, sw, other;

    auto* v = app.add_subcommand("validate", "check a track; prints OK");
    v->add_option("track", track_path, "track file, - for stdin")->required();

    auto* reg = app.add_subcommand("regions", "complementary regions");
    reg->add_option("track", track_path)->required();

    auto* sp = app.add_subcommand("split", "split at a large branch");
    sp->add_option("track", track_path)->required();
    sp->add_option("branch", branch)->required();
    sp->add_option("dir", direction, "R, L or X")->required();

    auto* sh = app.add_subcommand("shift", "shift a mixed branch");
    sh->add_option("track", track_path)->required();
    sh->add_option("branch", branch)->required();

    auto* co = app.add_subcommand("collapse", "undo a split at a small branch");
    co->add_option("track", track_path)->required();
    co->add_option("branch", branch)->required();

    auto* cb = app.add_subcommand("comb", "comb one step at a switch of valence at least 4");
    cb->add_option("track", track_path)->required();
    cb->add_option("switch", sw)->required();

    auto* me = app.add_subcommand("measures", "completeness checks and positive measures");
    me->add_option("track", track_path)->required();
    me->add_option("--guide", guide_path, "check a transverse measure");

    strip_args sa;
    auto* es = app.add_subcommand("enumerate-strip", "flat strip as vertex and edge lines");
    strip_options(es, sa, true);
    auto* cx = app.add_subcommand("complex", "cubes of the strip's cubical complex");
    strip_options(cx, sa, true);
    auto* li = app.add_subcommand("links", "flag check of every vertex link");
    strip_options(li, sa, true);
    auto* qi = app.add_subcommand("qi", "quasi-isometry constants of a strip");
    strip_options(qi, sa, false);
    auto* st = app.add_subcommand("stats", "summary of a strip and its complex");
    strip_options(st, sa, true);

    int depth = 8;
    auto* bc = app.add_subcommand("bicombe", "stations of the tight multi-sequence from a to b");
    bc->add_option("track-a", track_path)->required();
    bc->add_option("track-b", other)->required();
    bc->add_option("--max-depth", depth, "longest splitting sequence searched");

    int rounds = 8;
    auto* tw = app.add_subcommand("twist", "iterate circle multi-splits at a twist connector");
    tw->add_option("track", track_path)->required();
    tw->add_option("connector", other, "large:small, e.g. e3:e5")->required();
    tw->add_option("--rounds", rounds);

    bool census = false;
    auto* du = app.add_subcommand("dual", "dual bigon track");
    du->add_option("track", track_path)->required();
    du->add_option("--guide", guide_path, "print the sneaked-up tangential measure instead");
    du->add_flag("--census", census, "region counts only");

    unsigned long long seed = 1;
    int budget = -1;
    bool print = false;
    auto* cl = app.add_subcommand("collapse-lambda", "collapse the dual back to a train track");
    cl->add_option("track", track_path)->required();
    cl->add_option("guide", guide_path)->required();
    cl->add_option("--seed", seed);
    cl->add_option("--budget", budget);
    cl->add_flag("--print", print, "print the final track");

    CLI11_PARSE(app, argc, argv);

    try {
        if (v->parsed()) run_validate(track_path);
        else if (reg->parsed()) run_regions(track_path);
        else if (sp->parsed()) std::cout << print_track(split(load_track(track_path), parse_slot(branch), parse_dir(direction)));
        else if (sh->parsed()) std::cout << print_track(shift(load_track(track_path), parse_slot(branch)));
        else if (co->parsed()) {
            auto r = collapse(load_track(track_path), parse_slot(branch));
            if (!r) throw violation("branch cannot be collapsed");
            std::cerr << "undone " << dir_char(r->d) << "\n";
            std::cout << print_track(r->t);
        } else if (cb->parsed()) std::cout << print_track(comb_track(load_track(track_path), parse_switch(sw)).t);
        else if (me->parsed()) run_measures(track_path, guide_path);
        else if (es->parsed()) std::cout << export_strip(make_strip(sa));
        else if (cx->parsed()) std::cout << export_complex(build_complex(make_strip(sa), true));
        else if (li->parsed()) run_links(make_strip(sa));
        else if (qi->parsed()) run_qi(make_strip(sa));
        else if (st->parsed()) run_stats(make_strip(sa));
        else if (bc->parsed()) run_bicombe(track_path, other, depth);
        else if (tw->parsed()) run_twist(track_path, other, rounds);
        else if (du->parsed()) run_dual(track_path, guide_path, census);
        else if (cl->parsed()) run_collapse_lambda(track_path, guide_path, seed, budget, print);
    } catch (const parse_error& e) {
        std::cerr << "parse error at " << e.what() << "\n";
        return 2;
    } catch (const violation& e) {
        std::cerr << "violation: " << e.what() << "\n";
        return 1;
    } catch (const precondition_error& e) {
        std::cerr << "precondition: " << e.what() << "\n";
        return 1;
    } catch (const structural_error& e) {
        std::cerr << "structure: " << e.what() << "\n";
        return 1;
    } catch (const collapse_error& e) {
        std::cerr << "collapse: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
