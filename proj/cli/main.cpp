// frametool: command-line front end for the Kripke frame library.
//
// Subcommands wrap the library modules one-to-one; every frame or morphism
// that a command emits is printed in the same document format the commands
// accept, with human-readable details on `#` comment lines so the output
// still parses.  Exit codes: 0 success, 1 a checked property fails, 2
// invalid input, 3 a search budget was exhausted.

#include "CLI11.hpp"

#include "kripke/amalgamation.hpp"
#include "kripke/errors.hpp"
#include "kripke/exactness.hpp"
#include "kripke/formula.hpp"
#include "kripke/framedoc.hpp"
#include "kripke/limits.hpp"
#include "kripke/logic.hpp"
#include "kripke/pmorphism.hpp"
#include "kripke/presheaf.hpp"
#include "kripke/product.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace kripke;

// ---------------------------------------------------------------- output

std::string pair_label(int a, int b) {
    return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
}

std::vector<std::string> index_labels(const std::vector<int>& originals) {
    std::vector<std::string> out;
    out.reserve(originals.size());
    for (int w : originals) out.push_back(std::to_string(w));
    return out;
}

void emit_frame(const Frame& f, std::vector<std::string> labels = {}) {
    FrameDocument d;
    d.frame = f;
    d.labels = std::move(labels);
    std::cout << print_frame_document(d);
}

void emit_morphism(const PMorphism& f, std::vector<std::string> dom_labels = {},
                   std::vector<std::string> cod_labels = {}) {
    MorphismDocument d = to_document(f);
    d.dom.labels = std::move(dom_labels);
    d.cod.labels = std::move(cod_labels);
    std::cout << print_morphism_document(d);
}

std::string bits_text(const Bits& s) {
    std::ostringstream out;
    bool first = true;
    for (size_t w = s.find_first(); w != Bits::npos; w = s.find_next(w)) {
        if (!first) out << " ";
        out << w;
        first = false;
    }
    return first ? std::string("(none)") : out.str();
}

std::string compact_frame(const Frame& f) {
    std::ostringstream out;
    out << f.n << "w";
    bool first = true;
    for (int u = 0; u < f.n; ++u) {
        const Bits& row = f.adj[static_cast<size_t>(u)];
        for (size_t v = row.find_first(); v != Bits::npos; v = row.find_next(v)) {
            out << (first ? ":" : ",") << u << ">" << v;
            first = false;
        }
    }
    return out.str();
}

std::string compact_map(const std::vector<int>& m) {
    std::ostringstream out;
    out << "[";
    for (size_t i = 0; i < m.size(); ++i) out << (i ? " " : "") << m[i];
    out << "]";
    return out.str();
}

// ----------------------------------------------------------------- input

FrameDocument load_frame_doc(const std::string& path) { return read_frame_file(path); }

PMorphism load_morphism(const std::string& path) {
    try {
        return to_pmorphism(read_morphism_file(path));
    } catch (const InvalidInput& e) {
        std::string what = e.what();
        if (what.rfind(path, 0) == 0) throw;
        throw InvalidInput(path + ": " + what);
    }
}

void require_parallel(const PMorphism& f, const PMorphism& g, const char* what) {
    if (!(f.dom == g.dom))
        throw InvalidInput(std::string(what) + " needs a parallel pair: domains differ");
    if (!(f.cod == g.cod))
        throw InvalidInput(std::string(what) + " needs a parallel pair: codomains differ");
}

// Pair-selection document: optional `init: full|diagonal|empty`, then
// `pair: a b a2 b2` lines adding (a2,b2) to the set at (a,b).  The base
// frame comes from the context (the codomain of the parallel pair).
PairSelection load_selection(const std::string& path, const Frame& base) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open selection file '" + path + "'");
    PairSelection sel;
    sel.base = base;
    size_t nn = static_cast<size_t>(base.n) * static_cast<size_t>(base.n);
    sel.table.assign(nn, Bits(nn));
    auto fail = [&path](int line, const std::string& msg) {
        throw InvalidInput(path + ": line " + std::to_string(line) + ": " + msg);
    };
    std::string raw;
    int lineno = 0;
    bool saw_pair = false;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw;
        size_t b = line.find_first_not_of(" \t\r");
        size_t e = line.find_last_not_of(" \t\r");
        line = (b == std::string::npos) ? std::string() : line.substr(b, e - b + 1);
        if (line.empty() || line[0] == '#') continue;
        size_t colon = line.find(':');
        if (colon == std::string::npos) fail(lineno, "expected 'key: value', got '" + line + "'");
        std::string key = line.substr(0, colon);
        std::istringstream vs(line.substr(colon + 1));
        if (key == "init") {
            if (saw_pair) fail(lineno, "'init' must precede every 'pair' line");
            std::string mode;
            vs >> mode;
            if (mode == "full")
                sel = full_selection(base);
            else if (mode == "diagonal")
                sel = diagonal_selection(base);
            else if (mode != "empty")
                fail(lineno, "unknown init mode '" + mode + "' (full, diagonal, empty)");
        } else if (key == "pair") {
            int a, bb, ap, bp;
            if (!(vs >> a >> bb >> ap >> bp)) fail(lineno, "expected four world indices");
            std::string extra;
            if (vs >> extra) fail(lineno, "expected four world indices, got extra token");
            for (int w : {a, bb, ap, bp})
                if (w < 0 || w >= base.n)
                    fail(lineno, "world index " + std::to_string(w) + " out of range (base has " +
                                     std::to_string(base.n) + " worlds)");
            sel.insert(a, bb, ap, bp);
            saw_pair = true;
        } else {
            fail(lineno, "unknown key '" + key + "'");
        }
    }
    if (auto v = selection_violation(sel))
        throw InvalidInput(path + ": selection axiom " + std::to_string(v->axiom) +
                           " violated: " + v->text);
    return sel;
}

// ------------------------------------------------------------- commands

int run_check(const std::string& frame_path, const std::string& logic_text) {
    FrameDocument doc = load_frame_doc(frame_path);
    LogicSpec l = parse_logic(logic_text);
    bool in = frame_in_logic(l, doc.frame);
    std::cout << "# frame: " << frame_path << " (" << doc.frame.n << " worlds)\n";
    std::cout << "in " << to_string(l) << ": " << (in ? "yes" : "no") << "\n";
    return in ? 0 : 1;
}

int run_validate(const std::string& frame_path, const std::string& formula_text,
                 size_t max_maps) {
    FrameDocument doc = load_frame_doc(frame_path);
    Formula phi = parse_formula(formula_text);
    bool ok = frame_validates(doc.frame, phi, max_maps);
    std::cout << "# frame: " << frame_path << " (" << doc.frame.n << " worlds)\n";
    std::cout << "validates: " << (ok ? "yes" : "no") << "\n";
    return ok ? 0 : 1;
}

int run_equalizer(const std::string& f_path, const std::string& g_path) {
    PMorphism f = load_morphism(f_path);
    PMorphism g = load_morphism(g_path);
    require_parallel(f, g, "equalizer");
    Equalizer eq = equalizer(f, g);
    std::cout << "# equalizer: up-closed agreement set, with its inclusion\n";
    std::cout << "# kept source worlds: " << bits_text(eq.set) << "\n";
    emit_morphism(eq.inclusion, index_labels(eq.sub.worlds));
    return 0;
}

int run_coequalizer(const std::string& f_path, const std::string& g_path) {
    PMorphism f = load_morphism(f_path);
    PMorphism g = load_morphism(g_path);
    require_parallel(f, g, "coequalizer");
    Coequalizer cq = coequalizer(f, g);
    std::cout << "# coequalizer: quotient projection\n";
    std::cout << "# classes: " << cq.frame.n << "\n";
    emit_morphism(cq.projection);
    return 0;
}

int run_cokernel_pair(const std::string& f_path) {
    PMorphism f = load_morphism(f_path);
    CokernelPair ck = cokernel_pair(f);
    std::cout << "# cokernel pair: two pushout injections of the codomain\n";
    std::cout << "# apex worlds: " << ck.frame.n << "\n";
    std::cout << "# --- i0 ---\n";
    emit_morphism(ck.i0);
    std::cout << "# --- i1 ---\n";
    emit_morphism(ck.i1);
    return 0;
}

int run_pushout(const std::string& b_path, const std::string& c_path) {
    PMorphism b = load_morphism(b_path);
    PMorphism c = load_morphism(c_path);
    if (!(b.dom == c.dom)) throw InvalidInput("pushout needs a span: domains differ");
    Pushout po = pushout(b, c);
    std::cout << "# pushout of a span, as a coequalizer of coproduct legs\n";
    std::cout << "# apex worlds: " << po.frame.n << "\n";
    std::cout << "# --- from-b ---\n";
    emit_morphism(po.from_b);
    std::cout << "# --- from-c ---\n";
    emit_morphism(po.from_c);
    return 0;
}

int run_pullback(const std::string& f0_path, const std::string& f1_path) {
    PMorphism f0 = load_morphism(f0_path);
    PMorphism f1 = load_morphism(f1_path);
    if (!(f0.cod == f1.cod)) throw InvalidInput("pullback needs a cospan: codomains differ");
    DgrphPullback pb = dgrph_pullback(f0, f1);
    std::vector<std::string> labels;
    labels.reserve(pb.worlds.size());
    for (auto& [a, b] : pb.worlds) labels.push_back(pair_label(a, b));
    std::cout << "# graph pullback: pairs with equal images, coordinatewise edges\n";
    emit_frame(pb.frame, labels);
    bool ok = true;
    if (pb.p0) {
        std::cout << "# --- p0 ---\n";
        emit_morphism(*pb.p0);
    } else {
        std::cout << "# p0 is not a p-morphism: " << pb.p0_failure << "\n";
        ok = false;
    }
    if (pb.p1) {
        std::cout << "# --- p1 ---\n";
        emit_morphism(*pb.p1);
    } else {
        std::cout << "# p1 is not a p-morphism: " << pb.p1_failure << "\n";
        ok = false;
    }
    return ok ? 0 : 1;
}

void print_level(const ProductLevels& levels, int k) {
    Frame fk = levels.level_frame(k);
    std::vector<std::string> labels;
    labels.reserve(static_cast<size_t>(fk.n));
    for (int w = 0; w < fk.n; ++w)
        labels.push_back(pair_label(levels.p0[static_cast<size_t>(w)],
                                    levels.p1[static_cast<size_t>(w)]));
    std::ostringstream sizes;
    for (size_t i = 0; i < levels.level_sizes.size(); ++i)
        sizes << (i ? " " : "") << levels.level_sizes[i];
    std::cout << "# level sizes: " << sizes.str() << "\n";
    std::cout << "# printed level: " << k << "\n";
    emit_frame(fk, labels);
}

void print_level_dot(const ProductLevels& levels, int k) {
    Frame fk = levels.level_frame(k);
    FrameDocument d;
    d.frame = fk;
    for (int w = 0; w < fk.n; ++w)
        d.labels.push_back(pair_label(levels.p0[static_cast<size_t>(w)],
                                      levels.p1[static_cast<size_t>(w)]));
    std::cout << to_dot(d);
}

int run_product(const std::string& f0_path, const std::string& f1_path, int depth,
                bool until_stable, int max_depth, const std::string& logic_text,
                size_t max_maps, bool dot) {
    if (!until_stable && depth < 0)
        throw InvalidInput("product needs --depth, or --until-stable with a --max-depth cap");
    Frame w0 = load_frame_doc(f0_path).frame;
    Frame w1 = load_frame_doc(f1_path).frame;
    int build_depth = until_stable ? max_depth : depth;
    ProductLevels levels = product_levels(w0, w1, build_depth, max_maps);
    if (!logic_text.empty()) levels = restrict_to_logic(levels, parse_logic(logic_text));
    if (!until_stable) {
        if (dot)
            print_level_dot(levels, build_depth);
        else
            print_level(levels, build_depth);
        return 0;
    }
    int stable_at = -1;
    for (size_t k = 1; k < levels.level_sizes.size(); ++k)
        if (levels.level_sizes[k] == levels.level_sizes[k - 1]) {
            stable_at = static_cast<int>(k) - 1;
            break;
        }
    if (stable_at >= 0) {
        std::cout << "# stable: level " << stable_at << " equals level " << stable_at + 1
                  << "\n";
        if (dot)
            print_level_dot(levels, stable_at);
        else
            print_level(levels, stable_at);
        return 0;
    }
    std::cout << "# truncated: no two consecutive levels agree up to --max-depth " << max_depth
              << "\n";
    if (dot)
        print_level_dot(levels, build_depth);
    else
        print_level(levels, build_depth);
    return 3;
}

int run_mediate(const std::string& to0_path, const std::string& to1_path, int depth,
                const std::string& logic_text, size_t max_maps) {
    PMorphism to0 = load_morphism(to0_path);
    PMorphism to1 = load_morphism(to1_path);
    if (!(to0.dom == to1.dom)) throw InvalidInput("mediate needs a cone: apex frames differ");
    ProductLevels levels = product_levels(to0.cod, to1.cod, depth, max_maps);
    if (!logic_text.empty()) levels = restrict_to_logic(levels, parse_logic(logic_text));
    Cone cone{to0.dom, to0, to1};
    PMorphism m = mediate(cone, levels);
    std::vector<std::string> cod_labels;
    cod_labels.reserve(static_cast<size_t>(levels.frame.n));
    for (int w = 0; w < levels.frame.n; ++w)
        cod_labels.push_back(pair_label(levels.p0[static_cast<size_t>(w)],
                                        levels.p1[static_cast<size_t>(w)]));
    std::cout << "# mediator into the depth-" << depth << " level\n";
    emit_morphism(m, {}, cod_labels);
    return 0;
}

int run_subreduce(const std::string& w_path, const std::string& v_path, size_t max_maps) {
    Frame w = load_frame_doc(w_path).frame;
    Frame v = load_frame_doc(v_path).frame;
    std::optional<Subreduction> s = subreduces(w, v, max_maps);
    if (!s) {
        std::cout << "no subreduction\n";
        return 1;
    }
    std::cout << "# subreduction witness: up-closed domain, then the onto map\n";
    std::cout << "# domain (source worlds): " << bits_text(s->domain_set) << "\n";
    emit_morphism(s->onto, index_labels(s->sub.worlds));
    return 0;
}

int run_coamalgamate(const std::string& f0_path, const std::string& f1_path,
                     const std::string& logic_text, const std::string& strategy, int max_size) {
    PMorphism f0 = load_morphism(f0_path);
    PMorphism f1 = load_morphism(f1_path);
    if (!(f0.cod == f1.cod)) throw InvalidInput("coamalgamate needs a cospan: codomains differ");
    Cospan c{f0, f1};
    validate_cospan(c);
    LogicSpec l = parse_logic(logic_text);
    std::optional<Coamalgamation> a = coamalgamate(c, l, max_size, strategy);
    if (!a) {
        std::cout << "unsolved: no apex in " << to_string(l) << " up to size " << max_size
                  << " (strategy " << strategy << ")\n";
        return 1;
    }
    std::cout << "# route: " << a->route << "\n";
    std::cout << "# apex worlds: " << a->apex.n << "\n";
    std::cout << "# --- g0 ---\n";
    emit_morphism(a->g0);
    std::cout << "# --- g1 ---\n";
    emit_morphism(a->g1);
    return 0;
}

int run_audit(const std::string& logic_text, int bound, int apex_bound) {
    LogicSpec l = parse_logic(logic_text);
    AmalgamationAudit audit = audit_amalgamability(l, bound, apex_bound);
    std::cout << "logic: " << to_string(audit.logic) << "\n";
    std::cout << "size bound: " << audit.size_bound << "\n";
    std::cout << "apex bound: " << audit.apex_bound << "\n";
    std::cout << "cospans: " << audit.cospans << "\n";
    std::cout << "solved: " << audit.solved << "\n";
    for (const auto& [route, count] : audit.solved_by_route)
        std::cout << "route " << route << ": " << count << "\n";
    std::cout << "unsolved: " << audit.unsolved.size() << "\n";
    for (const auto& u : audit.unsolved)
        std::cout << "# unsolved: f0 " << compact_frame(u.cospan.f0.dom)
                  << compact_map(u.cospan.f0.map) << " f1 " << compact_frame(u.cospan.f1.dom)
                  << compact_map(u.cospan.f1.map) << " base " << compact_frame(u.cospan.f0.cod)
                  << (u.budget_exceeded ? " budget-exceeded" : "")
                  << (u.note.empty() ? "" : " " + u.note) << "\n";
    return audit.unsolved.empty() ? 0 : 1;
}

int report_witness(const PMorphism& g0, const PMorphism& g1, const PairSelection& sel) {
    WitnessReport wr = non_effectiveness_witness(g0, g1, sel);
    std::cout << "# admissible subframe U_A: " << bits_text(wr.u_a) << "\n";
    std::cout << "# world outside U_A: "
              << (wr.sample_world >= 0 ? std::to_string(wr.sample_world) : std::string("none"))
              << "\n";
    std::cout << "# proper subframe: " << (wr.u_minus_ua_nonempty ? "yes" : "no") << "\n";
    std::cout << "# coequalizer merges the pair on all of U: "
              << (wr.coequalizer_merges ? "yes" : "no") << "\n";
    std::cout << "# --- f_A (coequalizer of the restricted pair) ---\n";
    emit_morphism(wr.f_a);
    std::cout << "verdict: " << (wr.verdict ? "true" : "false") << "\n";
    return wr.verdict ? 0 : 1;
}

int run_witness(const std::string& fixture_name, const std::vector<std::string>& input_files) {
    if (!fixture_name.empty() && !input_files.empty())
        throw InvalidInput("witness takes --fixture or --input, not both");
    if (!fixture_name.empty()) {
        for (const ExactnessFixture& fx : builtin_fixtures())
            if (fx.name == fixture_name) {
                std::cout << "# fixture: " << fx.name << "\n";
                return report_witness(fx.g0, fx.g1, fx.selection);
            }
        std::string names;
        for (const ExactnessFixture& fx : builtin_fixtures())
            names += (names.empty() ? "" : ", ") + fx.name;
        throw InvalidInput("unknown fixture '" + fixture_name + "' (have: " + names + ")");
    }
    if (input_files.size() != 3)
        throw InvalidInput("witness needs --fixture NAME or --input G0 G1 SELECTION");
    PMorphism g0 = load_morphism(input_files[0]);
    PMorphism g1 = load_morphism(input_files[1]);
    require_parallel(g0, g1, "witness");
    PairSelection sel = load_selection(input_files[2], g0.cod);
    return report_witness(g0, g1, sel);
}

int run_presheaf_verify(const std::string& category_name, const std::string& logic_text,
                        int bound, int presheaf_bound, int strict_flag) {
    FinCategory cat = builtin_category(category_name);
    LogicSpec l = parse_logic(logic_text);
    bool strict = strict_flag >= 0 ? strict_flag > 0
                                   : category_name.rfind("chain-poset:", 0) == 0;
    if (presheaf_bound < 0) presheaf_bound = bound > 1 ? bound - 1 : 1;
    EquivalenceReport rep = verify_equivalence(cat, l, bound, presheaf_bound, strict);
    std::cout << "category: " << category_name << (strict ? " (strict)" : "") << "\n";
    std::cout << "logic: " << to_string(l) << "\n";
    std::cout << "presheaves checked: " << rep.presheaves_checked << " (size bound "
              << presheaf_bound << ")\n";
    std::cout << "logic frames checked: " << rep.logic_frames_checked << " (size bound " << bound
              << ")\n";
    std::cout << "injectivity sweep over all frames: " << rep.all_frames_checked
              << " (size bound " << rep.all_frames_bound << ")\n";
    std::cout << "triangle identities checked: " << rep.triangles_checked << "\n";
    for (const std::string& v : rep.violations) std::cout << "# violation: " << v << "\n";
    std::cout << "result: " << (rep.ok ? "pass" : "fail") << "\n";
    return rep.ok ? 0 : 1;
}

int run_classify(const std::string& logic_text) {
    LogicSpec l = parse_logic(logic_text);
    LogicSpec n = normalize(l);
    std::cout << "# logic: " << to_string(l) << "; normalized: " << to_string(n) << "\n";
    std::cout << "regular: " << (is_regular(l) ? "yes" : "no") << "; barr-exact: "
              << (is_barr_exact(l) ? "yes" : "no") << "\n";
    return 0;
}

int run_dot(const std::string& frame_path) {
    std::cout << to_dot(load_frame_doc(frame_path));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"frametool: finite Kripke frames, p-morphisms, and their category"};
    app.require_subcommand(1);
    int rc = 0;

    // check
    std::string check_frame, check_logic;
    auto* check = app.add_subcommand("check", "Test whether a frame lies in a logic");
    check->add_option("frame", check_frame, "frame document")->required();
    check->add_option("-L,--logic", check_logic, "logic, e.g. S4.2+bd2+be1")->required();
    check->callback([&]() { rc = run_check(check_frame, check_logic); });

    // validate
    std::string val_frame, val_formula;
    size_t val_max_maps = 1000000;
    auto* validate = app.add_subcommand("validate", "Test whether a frame validates a formula");
    validate->add_option("frame", val_frame, "frame document")->required();
    validate->add_option("-f,--formula", val_formula, "modal formula, e.g. 'box p -> p'")
        ->required();
    validate->add_option("--max-maps", val_max_maps, "valuation budget")
        ->capture_default_str();
    validate->callback([&]() { rc = run_validate(val_frame, val_formula, val_max_maps); });

    // equalizer / coequalizer
    std::string eq_f, eq_g;
    auto* eq = app.add_subcommand("equalizer", "Equalizer of a parallel pair of morphisms");
    eq->add_option("f", eq_f, "morphism document")->required();
    eq->add_option("g", eq_g, "morphism document")->required();
    eq->callback([&]() { rc = run_equalizer(eq_f, eq_g); });

    std::string cq_f, cq_g;
    auto* cq = app.add_subcommand("coequalizer", "Coequalizer of a parallel pair of morphisms");
    cq->add_option("f", cq_f, "morphism document")->required();
    cq->add_option("g", cq_g, "morphism document")->required();
    cq->callback([&]() { rc = run_coequalizer(cq_f, cq_g); });

    // cokernel-pair
    std::string ck_f;
    auto* ck = app.add_subcommand("cokernel-pair", "Cokernel pair of a morphism");
    ck->add_option("f", ck_f, "morphism document")->required();
    ck->callback([&]() { rc = run_cokernel_pair(ck_f); });

    // pushout
    std::string po_b, po_c;
    auto* po = app.add_subcommand("pushout", "Pushout of a span of morphisms");
    po->add_option("b", po_b, "morphism document (A -> B)")->required();
    po->add_option("c", po_c, "morphism document (A -> C)")->required();
    po->callback([&]() { rc = run_pushout(po_b, po_c); });

    // pullback
    std::string pb_f0, pb_f1;
    auto* pb = app.add_subcommand("pullback",
                                  "Graph pullback of a cospan, with projection diagnostics");
    pb->add_option("f0", pb_f0, "morphism document (W0 -> V)")->required();
    pb->add_option("f1", pb_f1, "morphism document (W1 -> V)")->required();
    pb->callback([&]() { rc = run_pullback(pb_f0, pb_f1); });

    // product
    std::string pr_f0, pr_f1, pr_logic;
    int pr_depth = -1, pr_max_depth = 4;
    bool pr_until_stable = false, pr_dot = false;
    size_t pr_max_maps = 1000000;
    auto* pr = app.add_subcommand("product",
                                  "Depth-truncated product of two reflexive transitive frames");
    pr->add_option("f0", pr_f0, "frame document")->required();
    pr->add_option("f1", pr_f1, "frame document")->required();
    pr->add_option("-d,--depth", pr_depth, "level to compute and print");
    pr->add_flag("--until-stable", pr_until_stable,
                 "deepen until two consecutive levels agree (capped by --max-depth)");
    pr->add_option("-L,--logic", pr_logic, "restrict levels to worlds whose cone fits the logic");
    pr->add_option("--max-depth", pr_max_depth, "depth cap for --until-stable")
        ->capture_default_str();
    pr->add_option("--max-maps", pr_max_maps, "admissibility-search budget")
        ->capture_default_str();
    pr->add_flag("--dot", pr_dot, "emit the printed level as a graph-description text");
    pr->callback([&]() {
        rc = run_product(pr_f0, pr_f1, pr_depth, pr_until_stable, pr_max_depth, pr_logic,
                         pr_max_maps, pr_dot);
    });

    // mediate
    std::string md_to0, md_to1, md_logic;
    int md_depth = 4;
    size_t md_max_maps = 1000000;
    auto* md = app.add_subcommand("mediate",
                                  "Mediating morphism from a cone into the product levels");
    md->add_option("to0", md_to0, "morphism document (apex -> factor 0)")->required();
    md->add_option("to1", md_to1, "morphism document (apex -> factor 1)")->required();
    md->add_option("-d,--depth", md_depth, "product depth to mediate into")
        ->capture_default_str();
    md->add_option("-L,--logic", md_logic, "restrict levels to the logic first");
    md->add_option("--max-maps", md_max_maps, "admissibility-search budget")
        ->capture_default_str();
    md->callback([&]() { rc = run_mediate(md_to0, md_to1, md_depth, md_logic, md_max_maps); });

    // subreduce
    std::string sr_w, sr_v;
    size_t sr_max_maps = 1000000;
    auto* sr = app.add_subcommand("subreduce",
                                  "Witness that the first frame subreduces onto the second");
    sr->add_option("w", sr_w, "source frame document")->required();
    sr->add_option("v", sr_v, "target frame document")->required();
    sr->add_option("--max-maps", sr_max_maps, "search budget")->capture_default_str();
    sr->callback([&]() { rc = run_subreduce(sr_w, sr_v, sr_max_maps); });

    // coamalgamate
    std::string ca_f0, ca_f1, ca_logic, ca_strategy = "auto";
    int ca_max_size = 6;
    auto* ca = app.add_subcommand("coamalgamate",
                                  "Solve a cospan of surjections inside a logic");
    ca->add_option("f0", ca_f0, "morphism document (W0 ->> V)")->required();
    ca->add_option("f1", ca_f1, "morphism document (W1 ->> V)")->required();
    ca->add_option("-L,--logic", ca_logic, "logic the apex must lie in")->required();
    ca->add_option("--strategy", ca_strategy, "auto, horn, chain, reflect, bruteforce, or sum")
        ->capture_default_str();
    ca->add_option("--max-size", ca_max_size, "apex size cap for the search routes")
        ->capture_default_str();
    ca->callback(
        [&]() { rc = run_coamalgamate(ca_f0, ca_f1, ca_logic, ca_strategy, ca_max_size); });

    // audit
    std::string au_logic;
    int au_bound = 0, au_apex_bound = -1;
    auto* au = app.add_subcommand(
        "audit", "Solve every cospan between a logic's rooted representatives");
    au->add_option("-L,--logic", au_logic, "logic to audit")->required();
    au->add_option("-b,--bound", au_bound, "frame size bound for the cospans")->required();
    au->add_option("--apex-bound", au_apex_bound,
                   "apex size cap (default: derived from the bound)");
    au->callback([&]() { rc = run_audit(au_logic, au_bound, au_apex_bound); });

    // witness
    std::string wt_fixture;
    std::vector<std::string> wt_input;
    auto* wt = app.add_subcommand(
        "witness", "Non-effectiveness report for a parallel pair and a pair selection");
    wt->add_option("--fixture", wt_fixture, "built-in configuration name");
    wt->add_option("--input", wt_input, "G0 G1 SELECTION (two morphisms and a selection file)")
        ->expected(3);
    wt->callback([&]() { rc = run_witness(wt_fixture, wt_input); });

    // presheaf verify
    auto* psh = app.add_subcommand("presheaf", "Presheaf-category commands");
    psh->require_subcommand(1);
    std::string pv_category, pv_logic;
    int pv_bound = 4, pv_presheaf_bound = -1;
    bool pv_strict = false, pv_no_strict = false;
    auto* pv = psh->add_subcommand(
        "verify", "Check the frames-presheaves equivalence for a category and logic");
    pv->add_option("-c,--category", pv_category,
                   "z2-mult, z3-mult, trivial, z2-add, or chain-poset:<n>")
        ->required();
    pv->add_option("-L,--logic", pv_logic, "logic expected to match the element frames")
        ->required();
    pv->add_option("-b,--bound", pv_bound, "frame size bound")->capture_default_str();
    pv->add_option("--presheaf-bound", pv_presheaf_bound,
                   "presheaf size bound (default: bound - 1)");
    pv->add_flag("--strict", pv_strict, "use strict element frames (default for chain-poset)");
    pv->add_flag("--no-strict", pv_no_strict, "use preorder element frames");
    pv->callback([&]() {
        int strict_flag = pv_strict ? 1 : pv_no_strict ? 0 : -1;
        rc = run_presheaf_verify(pv_category, pv_logic, pv_bound, pv_presheaf_bound,
                                 strict_flag);
    });

    // classify
    std::string cl_logic;
    auto* cl = app.add_subcommand("classify",
                                  "Report regularity and exactness of a logic's frame category");
    cl->add_option("-L,--logic", cl_logic, "logic to classify")->required();
    cl->callback([&]() { rc = run_classify(cl_logic); });

    // dot
    std::string dot_frame;
    auto* dot = app.add_subcommand("dot", "Emit a frame as a graph-description text");
    dot->add_option("frame", dot_frame, "frame document")->required();
    dot->callback([&]() { rc = run_dot(dot_frame); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const kripke::InvalidInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const kripke::BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 3;
    } catch (const std::logic_error& e) {
        std::cerr << "internal invariant violated: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return rc;
}
