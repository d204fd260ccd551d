#pragma once

#include "kripke/frame.hpp"
#include "kripke/pmorphism.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace kripke {

/// A frame together with optional world labels, as read from or written to
/// the plain-text document format:
///
///     # optional comments
///     worlds: 3
///     label: 0 root        # optional, any world, at most once each
///     edge: 0 1
///     edge: 1 2
///
/// Blank lines and lines starting with '#' are ignored.  Worlds are
/// 0-based.  Errors carry the offending line number.
struct FrameDocument {
    Frame frame;
    std::vector<std::string> labels; // empty, or one entry per world ("" = unlabeled)
};

FrameDocument parse_frame_document(const std::string& text);

/// Canonical rendering: worlds line, labels in world order, edges sorted
/// by (source, target).  parse(print(d)) reproduces the frame and labels,
/// and print(parse(print(d))) is byte-identical to print(d).
std::string print_frame_document(const FrameDocument& doc);

FrameDocument read_frame_file(const std::string& path);
void write_frame_file(const std::string& path, const FrameDocument& doc);

/// Graphviz rendering (digraph with one node per world).
std::string to_dot(const FrameDocument& doc);

/// A map between two inline frames, in the same plain-text style:
///
///     dom-worlds: 3
///     dom-edge: 0 1        # plus optional dom-label lines
///     cod-worlds: 2
///     cod-edge: 0 1
///     send: 0 0            # exactly one per domain world
///     send: 1 1
///     send: 2 1
///
/// The document is pure structure; whether the map is a p-morphism is
/// checked only by to_pmorphism.
struct MorphismDocument {
    FrameDocument dom;
    FrameDocument cod;
    std::vector<int> map; // one entry per domain world
};

MorphismDocument parse_morphism_document(const std::string& text);

/// Canonical rendering with the same round-trip guarantees as
/// print_frame_document.
std::string print_morphism_document(const MorphismDocument& doc);

MorphismDocument read_morphism_file(const std::string& path);
void write_morphism_file(const std::string& path, const MorphismDocument& doc);

/// Validate the p-morphism conditions and construct; InvalidInput with the
/// offending world or edge otherwise.
PMorphism to_pmorphism(const MorphismDocument& doc);

/// Repackage a p-morphism as a document (no labels).
MorphismDocument to_document(const PMorphism& f);

} // namespace kripke
