#include <charconv>
#include <sstream>
#include <vector>

#include "topdag/topdag.hpp"

namespace topdag {

std::string serialize_topdag(const TopDag& d) {
    std::ostringstream out;
    out << "TOPDAG v1 mode=" << mode_name(d.meta.mode) << " n=" << d.meta.n
        << " sigma=" << d.meta.sigma << " k=" << d.meta.k << '\n';
    if (d.single_label) {
        out << "NODE " << *d.single_label << '\n';
        return out.str();
    }
    out << "root " << d.root.value << '\n';
    for (std::uint32_t i = 0; i < d.store.size(); ++i) {
        const TopNode& n = d.store.node({i});
        out << i;
        switch (n.kind) {
        case NodeKind::Leaf:
            out << " L " << d.store.symbol(n.first) << ' ' << d.store.symbol(n.second) << ' '
                << int{n.rank};
            break;
        case NodeKind::Vertical: out << " V " << n.first << ' ' << n.second; break;
        case NodeKind::Horizontal: out << " H " << n.first << ' ' << n.second; break;
        }
        out << '\n';
    }
    return out.str();
}

namespace {

std::vector<std::string_view> split_words(std::string_view line) {
    std::vector<std::string_view> words;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && line[i] == ' ') ++i;
        std::size_t start = i;
        while (i < line.size() && line[i] != ' ') ++i;
        if (i > start) words.push_back(line.substr(start, i - start));
    }
    return words;
}

template <typename Int>
Int parse_int(std::string_view s, std::size_t line_no, const char* what) {
    Int value{};
    auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || end != s.data() + s.size())
        throw TopDagFormatError("line " + std::to_string(line_no) + ": bad " + what + " '" +
                                std::string(s) + "'");
    return value;
}

template <typename Int>
Int parse_field(std::string_view word, std::string_view key, std::size_t line_no) {
    if (word.substr(0, key.size()) != key || word.size() <= key.size() || word[key.size()] != '=')
        throw TopDagFormatError("line " + std::to_string(line_no) + ": expected '" + std::string(key) +
                                "=' field");
    return parse_int<Int>(word.substr(key.size() + 1), line_no, std::string(key).c_str());
}

} // namespace

TopDag deserialize_topdag(std::string_view text) {
    std::vector<std::string_view> lines;
    for (std::size_t start = 0; start < text.size();) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        lines.push_back(text.substr(start, end - start));
        start = end + 1;
    }

    if (lines.empty()) throw TopDagFormatError("version mismatch: empty input");
    auto header = split_words(lines[0]);
    if (header.size() < 2 || header[0] != "TOPDAG" || header[1] != "v1")
        throw TopDagFormatError("version mismatch: expected header 'TOPDAG v1'");
    if (header.size() != 6) throw TopDagFormatError("line 1: malformed header");

    TopDag d;
    std::string_view mode_word = header[2];
    if (mode_word.substr(0, 5) != "mode=") throw TopDagFormatError("line 1: expected 'mode=' field");
    try {
        d.meta.mode = parse_mode(mode_word.substr(5));
    } catch (const std::invalid_argument& e) {
        throw TopDagFormatError(std::string("line 1: ") + e.what());
    }
    d.meta.n = parse_field<std::uint64_t>(header[3], "n", 1);
    d.meta.sigma = parse_field<std::uint32_t>(header[4], "sigma", 1);
    d.meta.k = parse_field<std::uint32_t>(header[5], "k", 1);

    if (lines.size() < 2) throw TopDagFormatError("line 2: missing root record");
    auto second = split_words(lines[1]);
    if (second.size() == 2 && second[0] == "NODE") {
        if (!is_valid_label(second[1])) throw TopDagFormatError("line 2: invalid label");
        if (d.meta.n != 0) throw TopDagFormatError("line 2: single-node record requires n=0");
        for (std::size_t i = 2; i < lines.size(); ++i)
            if (!split_words(lines[i]).empty())
                throw TopDagFormatError("line " + std::to_string(i + 1) + ": record after NODE");
        d.single_label = std::string(second[1]);
        return d;
    }
    if (second.size() != 2 || second[0] != "root") throw TopDagFormatError("line 2: expected 'root <id>'");
    const auto root = parse_int<std::uint32_t>(second[1], 2, "root id");

    for (std::size_t i = 2; i < lines.size(); ++i) {
        const std::size_t line_no = i + 1;
        auto w = split_words(lines[i]);
        if (w.empty()) {
            if (i + 1 == lines.size()) break;
            throw TopDagFormatError("line " + std::to_string(line_no) + ": empty record");
        }
        const auto id = parse_int<std::uint32_t>(w[0], line_no, "id");
        const auto expected = static_cast<std::uint32_t>(d.store.size());
        if (id < expected)
            throw TopDagFormatError("line " + std::to_string(line_no) + ": duplicate id " + std::to_string(id));
        if (id > expected)
            throw TopDagFormatError("line " + std::to_string(line_no) + ": ids must be dense, expected " +
                                    std::to_string(expected));
        try {
            if (w.size() == 5 && w[1] == "L") {
                if (!is_valid_label(w[2]) || !is_valid_label(w[3]))
                    throw TopDagFormatError("line " + std::to_string(line_no) + ": invalid label");
                const auto rank = parse_int<int>(w[4], line_no, "rank bit");
                if (rank != 0 && rank != 1)
                    throw TopDagFormatError("line " + std::to_string(line_no) + ": rank bit must be 0 or 1");
                LabelId a = d.store.intern(w[2]);
                LabelId b = d.store.intern(w[3]);
                d.store.append_unshared(NodeKind::Leaf, a, b, rank);
            } else if (w.size() == 4 && (w[1] == "V" || w[1] == "H")) {
                const auto left = parse_int<std::uint32_t>(w[2], line_no, "child id");
                const auto right = parse_int<std::uint32_t>(w[3], line_no, "child id");
                if (left >= id || right >= id)
                    throw TopDagFormatError("line " + std::to_string(line_no) + ": dangling child id");
                d.store.append_unshared(w[1] == "V" ? NodeKind::Vertical : NodeKind::Horizontal, left,
                                        right, 0);
            } else {
                throw TopDagFormatError("line " + std::to_string(line_no) + ": malformed record");
            }
        } catch (const MergeError& e) {
            throw TopDagFormatError("line " + std::to_string(line_no) + ": inconsistent merge: " + e.what());
        }
    }

    if (d.store.size() == 0) throw TopDagFormatError("top dag has no records");
    if (root >= d.store.size()) throw TopDagFormatError("line 2: dangling root id");
    d.root = TopId{root};
    const TopNode& r = d.store.node(d.root);
    if (r.rank != 0) throw TopDagFormatError("root cluster has rank 1");
    if (r.weight != d.meta.n)
        throw TopDagFormatError("root weight " + std::to_string(r.weight) + " differs from n=" +
                                std::to_string(d.meta.n));
    return d;
}

} // namespace topdag
