#include "lscrystal/dot_export.hpp"

#include <iomanip>
#include <sstream>

#include "lscrystal/json_io.hpp"

namespace lscrystal {

namespace {

std::string node_id(const LSPath& p) {
    const std::size_t h = std::hash<std::string>{}(canonical_path_string(p));
    std::ostringstream os;
    os << "n" << std::hex << std::setw(12) << std::setfill('0') << (h & 0xffffffffffffULL);
    return os.str();
}

std::string node_label(const LSPath& p, const std::string& id) {
    std::ostringstream os;
    os << "(";
    for (std::size_t v = 0; v < p.dirs().size(); ++v) {
        if (v) os << ",";
        os << p.dirs()[v];
    }
    os << " | ";
    for (std::size_t v = 1; v + 1 < p.sigmas().size(); ++v) {
        if (v > 1) os << ",";
        os << to_string(p.sigmas()[v]);
    }
    os << ")";
    std::string label = os.str();
    // Cap long labels, keeping the hash suffix as the stable identity.
    if (label.size() > 64) label = label.substr(0, 58) + "..." + id.substr(1, 6);
    return label;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

}  // namespace

std::string crystal_dot(const ComponentReport& rep) {
    std::ostringstream os;
    os << "digraph crystal {\n";
    os << "  rankdir=TB;\n  node [shape=box, fontsize=10];\n";
    std::vector<std::string> ids;
    ids.reserve(rep.visited.size());
    for (const auto& p : rep.visited) {
        ids.push_back(node_id(p));
        os << "  " << ids.back() << " [label=\"" << escape(node_label(p, ids.back())) << "\"];\n";
    }
    for (const auto& e : rep.edges)
        os << "  " << ids[e.from] << " -> " << ids[e.to] << " [label=\"f" << e.i << "\"];\n";
    os << "}\n";
    return os.str();
}

std::string hasse_dot(const PSequence& seq, long from, long to) {
    if (from > to) std::swap(from, to);
    std::ostringstream os;
    os << "digraph hasse {\n  rankdir=LR;\n  node [shape=box, fontsize=10];\n";
    const auto name = [](long m) {
        return std::string("x") + (m < 0 ? "m" + std::to_string(-m) : std::to_string(m));
    };
    for (long m = from; m <= to; ++m) {
        const Weight w = seq.xm_lambda(m);
        std::ostringstream label;
        label << "x_" << m << " l = " << w.c1.str() << "*L1 + " << w.c2.str() << "*L2";
        std::string text = label.str();
        if (text.size() > 64) text = text.substr(0, 61) + "...";
        os << "  " << name(m) << " [label=\"" << escape(text) << "\"];\n";
    }
    // Arrows point at the larger element; a negative p-sequence reverses the
    // chain orientation relative to the index order.
    const bool increasing = seq.p(from) > 0;
    for (long m = from + 1; m <= to; ++m) {
        const HasseCover cover = hasse_cover(seq, m);
        if (increasing)
            os << "  " << name(cover.lower_m) << " -> " << name(m) << " [label=\"a" << cover.label
               << "\"];\n";
        else
            os << "  " << name(m) << " -> " << name(cover.lower_m) << " [label=\"a" << cover.label
               << "\"];\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace lscrystal
