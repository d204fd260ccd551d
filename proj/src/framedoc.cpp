#include "kripke/framedoc.hpp"
#include "kripke/errors.hpp"

#include <fstream>
#include <sstream>

namespace kripke {

namespace {

[[noreturn]] void fail(int line, const std::string& msg) {
    throw InvalidInput("line " + std::to_string(line) + ": " + msg);
}

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool parse_int(const std::string& tok, int& out) {
    if (tok.empty()) return false;
    size_t pos = 0;
    try {
        long v = std::stol(tok, &pos);
        if (pos != tok.size() || v < 0 || v > 1000000) return false;
        out = static_cast<int>(v);
        return true;
    } catch (...) {
        return false;
    }
}

// One frame being assembled from keyed lines; `who` prefixes messages when
// several frames share a document ("dom " / "cod ").
struct FramePart {
    FrameDocument doc;
    bool have_worlds = false;
    bool have_labels = false;
    std::string who;

    void handle(const std::string& key, const std::string& value, int lineno) {
        if (key == "worlds") {
            if (have_worlds) fail(lineno, "duplicate '" + who + "worlds' line");
            int n;
            if (!parse_int(value, n)) fail(lineno, "invalid world count '" + value + "'");
            doc.frame = Frame(n);
            doc.labels.assign(static_cast<size_t>(n), "");
            have_worlds = true;
        } else if (key == "edge") {
            if (!have_worlds) fail(lineno, "'" + who + "edge' before '" + who + "worlds'");
            std::istringstream vs(value);
            std::string a, b, extra;
            vs >> a >> b;
            if (vs >> extra)
                fail(lineno, "expected two world indices, got extra token '" + extra + "'");
            int u, v;
            if (!parse_int(a, u) || !parse_int(b, v)) fail(lineno, "invalid edge '" + value + "'");
            if (u >= doc.frame.n || v >= doc.frame.n)
                fail(lineno,
                     "edge index out of range (worlds: " + std::to_string(doc.frame.n) + ")");
            doc.frame.add_edge(u, v);
        } else if (key == "label") {
            if (!have_worlds) fail(lineno, "'" + who + "label' before '" + who + "worlds'");
            std::istringstream vs(value);
            std::string a;
            vs >> a;
            int w;
            if (!parse_int(a, w) || w >= doc.frame.n)
                fail(lineno, "invalid label world '" + a + "'");
            std::string rest;
            std::getline(vs, rest);
            rest = trim(rest);
            if (rest.empty()) fail(lineno, "empty label text");
            if (!doc.labels[static_cast<size_t>(w)].empty())
                fail(lineno, "duplicate label for world " + std::to_string(w));
            doc.labels[static_cast<size_t>(w)] = rest;
            have_labels = true;
        } else {
            fail(lineno, "unknown key '" + who + key + "'");
        }
    }

    FrameDocument finish(const std::string& doc_kind) {
        if (!have_worlds) throw InvalidInput(doc_kind + " has no '" + who + "worlds' line");
        if (!have_labels) doc.labels.clear();
        return std::move(doc);
    }
};

// Split "key: value" after trimming; returns false for blank/comment lines.
bool keyed_line(const std::string& raw, int lineno, std::string& key, std::string& value) {
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') return false;
    size_t colon = line.find(':');
    if (colon == std::string::npos) fail(lineno, "expected 'key: value', got '" + line + "'");
    key = trim(line.substr(0, colon));
    value = trim(line.substr(colon + 1));
    return true;
}

} // namespace

FrameDocument parse_frame_document(const std::string& text) {
    FramePart part;
    std::istringstream in(text);
    std::string raw, key, value;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        if (!keyed_line(raw, lineno, key, value)) continue;
        part.handle(key, value, lineno);
    }
    return part.finish("document");
}

std::string print_frame_document(const FrameDocument& doc) {
    std::ostringstream out;
    out << "worlds: " << doc.frame.n << "\n";
    if (!doc.labels.empty()) {
        for (int w = 0; w < doc.frame.n; ++w)
            if (!doc.labels[static_cast<size_t>(w)].empty())
                out << "label: " << w << " " << doc.labels[static_cast<size_t>(w)] << "\n";
    }
    for (int u = 0; u < doc.frame.n; ++u) {
        const Bits& row = doc.frame.adj[static_cast<size_t>(u)];
        for (size_t v = row.find_first(); v != Bits::npos; v = row.find_next(v))
            out << "edge: " << u << " " << v << "\n";
    }
    return out.str();
}

FrameDocument read_frame_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open frame file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_frame_document(buf.str());
    } catch (const InvalidInput& e) {
        throw InvalidInput(path + ": " + e.what());
    }
}

void write_frame_file(const std::string& path, const FrameDocument& doc) {
    std::ofstream out(path);
    if (!out) throw InvalidInput("cannot write frame file '" + path + "'");
    out << print_frame_document(doc);
}

MorphismDocument parse_morphism_document(const std::string& text) {
    FramePart dom, cod;
    dom.who = "dom-";
    cod.who = "cod-";
    // send target recorded per domain world; -1 = not yet given
    std::vector<int> map;
    std::vector<int> send_line;
    std::istringstream in(text);
    std::string raw, key, value;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        if (!keyed_line(raw, lineno, key, value)) continue;
        if (key.rfind("dom-", 0) == 0) {
            dom.handle(key.substr(4), value, lineno);
            if (key == "dom-worlds") {
                map.assign(static_cast<size_t>(dom.doc.frame.n), -1);
                send_line.assign(static_cast<size_t>(dom.doc.frame.n), 0);
            }
        } else if (key.rfind("cod-", 0) == 0) {
            cod.handle(key.substr(4), value, lineno);
        } else if (key == "send") {
            if (!dom.have_worlds) fail(lineno, "'send' before 'dom-worlds'");
            if (!cod.have_worlds) fail(lineno, "'send' before 'cod-worlds'");
            std::istringstream vs(value);
            std::string a, b, extra;
            vs >> a >> b;
            if (vs >> extra)
                fail(lineno, "expected two world indices, got extra token '" + extra + "'");
            int u, v;
            if (!parse_int(a, u) || !parse_int(b, v)) fail(lineno, "invalid send '" + value + "'");
            if (u >= dom.doc.frame.n)
                fail(lineno, "send source out of range (dom-worlds: " +
                                 std::to_string(dom.doc.frame.n) + ")");
            if (v >= cod.doc.frame.n)
                fail(lineno, "send target out of range (cod-worlds: " +
                                 std::to_string(cod.doc.frame.n) + ")");
            if (map[static_cast<size_t>(u)] != -1)
                fail(lineno, "duplicate 'send' for world " + std::to_string(u) +
                                 " (first on line " +
                                 std::to_string(send_line[static_cast<size_t>(u)]) + ")");
            map[static_cast<size_t>(u)] = v;
            send_line[static_cast<size_t>(u)] = lineno;
        } else {
            fail(lineno, "unknown key '" + key + "'");
        }
    }
    MorphismDocument doc;
    doc.dom = dom.finish("morphism document");
    doc.cod = cod.finish("morphism document");
    for (int u = 0; u < doc.dom.frame.n; ++u)
        if (map[static_cast<size_t>(u)] == -1)
            throw InvalidInput("morphism document has no 'send' line for world " +
                               std::to_string(u));
    doc.map = std::move(map);
    return doc;
}

std::string print_morphism_document(const MorphismDocument& doc) {
    std::ostringstream out;
    auto block = [&out](const FrameDocument& fd, const char* prefix) {
        out << prefix << "worlds: " << fd.frame.n << "\n";
        if (!fd.labels.empty()) {
            for (int w = 0; w < fd.frame.n; ++w)
                if (!fd.labels[static_cast<size_t>(w)].empty())
                    out << prefix << "label: " << w << " " << fd.labels[static_cast<size_t>(w)]
                        << "\n";
        }
        for (int u = 0; u < fd.frame.n; ++u) {
            const Bits& row = fd.frame.adj[static_cast<size_t>(u)];
            for (size_t v = row.find_first(); v != Bits::npos; v = row.find_next(v))
                out << prefix << "edge: " << u << " " << v << "\n";
        }
    };
    block(doc.dom, "dom-");
    block(doc.cod, "cod-");
    for (int u = 0; u < doc.dom.frame.n; ++u)
        out << "send: " << u << " " << doc.map[static_cast<size_t>(u)] << "\n";
    return out.str();
}

MorphismDocument read_morphism_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open morphism file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_morphism_document(buf.str());
    } catch (const InvalidInput& e) {
        throw InvalidInput(path + ": " + e.what());
    }
}

void write_morphism_file(const std::string& path, const MorphismDocument& doc) {
    std::ofstream out(path);
    if (!out) throw InvalidInput("cannot write morphism file '" + path + "'");
    out << print_morphism_document(doc);
}

PMorphism to_pmorphism(const MorphismDocument& doc) {
    return make_pmorphism(doc.dom.frame, doc.cod.frame, doc.map);
}

MorphismDocument to_document(const PMorphism& f) {
    MorphismDocument doc;
    doc.dom.frame = f.dom;
    doc.cod.frame = f.cod;
    doc.map = f.map;
    return doc;
}

std::string to_dot(const FrameDocument& doc) {
    std::ostringstream out;
    out << "digraph frame {\n";
    for (int w = 0; w < doc.frame.n; ++w) {
        out << "  w" << w << " [label=\"" << w;
        if (!doc.labels.empty() && !doc.labels[static_cast<size_t>(w)].empty())
            out << ": " << doc.labels[static_cast<size_t>(w)];
        out << "\"];\n";
    }
    for (int u = 0; u < doc.frame.n; ++u) {
        const Bits& row = doc.frame.adj[static_cast<size_t>(u)];
        for (size_t v = row.find_first(); v != Bits::npos; v = row.find_next(v))
            out << "  w" << u << " -> w" << v << ";\n";
    }
    out << "}\n";
    return out.str();
}

} // namespace kripke
