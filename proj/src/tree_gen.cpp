#include "topdag/tree.hpp"

#include <algorithm>
#include <random>

namespace topdag {

namespace {

// Unbiased draw from [0, bound). std::uniform_int_distribution is not
// specified bit-for-bit, so generated corpora would differ across standard
// libraries.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % bound;
}

std::vector<std::string> generated_alphabet(std::size_t alphabet) {
    std::vector<std::string> names;
    names.reserve(alphabet);
    for (std::size_t i = 0; i < alphabet; ++i) names.push_back(generated_label(i));
    return names;
}

// Builds a preorder tree from a Dyck word given as a vector of +1/-1 steps.
std::vector<NodeId> parents_from_steps(const std::vector<std::int8_t>& steps) {
    std::vector<NodeId> parents{kNoNode};
    std::vector<NodeId> open{0};
    for (auto s : steps) {
        if (s > 0) {
            auto v = static_cast<NodeId>(parents.size());
            parents.push_back(open.back());
            open.push_back(v);
        } else {
            open.pop_back();
        }
    }
    return parents;
}

} // namespace

Shape parse_shape(std::string_view name) {
    if (name == "uniform") return Shape::Uniform;
    if (name == "path") return Shape::Path;
    if (name == "star") return Shape::Star;
    if (name == "caterpillar") return Shape::Caterpillar;
    if (name == "full_binary") return Shape::FullBinary;
    throw std::invalid_argument("unknown shape '" + std::string(name) + "'");
}

std::string_view shape_name(Shape shape) noexcept {
    switch (shape) {
    case Shape::Uniform: return "uniform";
    case Shape::Path: return "path";
    case Shape::Star: return "star";
    case Shape::Caterpillar: return "caterpillar";
    case Shape::FullBinary: return "full_binary";
    }
    return "?";
}

std::string generated_label(std::size_t index) {
    if (index < 26) return std::string(1, static_cast<char>('a' + index));
    return "l" + std::to_string(index);
}

Tree random_tree(std::size_t edges, std::size_t alphabet, std::uint64_t seed, Shape shape) {
    if (alphabet == 0) throw std::invalid_argument("alphabet must contain at least one label");
    std::mt19937_64 rng(seed);
    std::vector<NodeId> parents;
    parents.reserve(edges + 1);

    switch (shape) {
    case Shape::Uniform: {
        // Cycle lemma: among the rotations of a sequence of n up-steps and
        // n+1 down-steps exactly one stays nonnegative until its last step.
        std::vector<std::int8_t> steps(2 * edges + 1, -1);
        std::fill_n(steps.begin(), edges, std::int8_t{1});
        for (std::size_t i = steps.size() - 1; i > 0; --i)
            std::swap(steps[i], steps[uniform_below(rng, i + 1)]);
        std::int64_t sum = 0, best = 0;
        std::size_t best_at = 0;
        for (std::size_t i = 0; i < steps.size(); ++i) {
            sum += steps[i];
            if (sum < best) {
                best = sum;
                best_at = i + 1;
            }
        }
        std::rotate(steps.begin(), steps.begin() + static_cast<std::ptrdiff_t>(best_at % steps.size()),
                    steps.end());
        steps.pop_back();
        parents = parents_from_steps(steps);
        break;
    }
    case Shape::Path:
        parents.push_back(kNoNode);
        for (std::size_t v = 1; v <= edges; ++v) parents.push_back(static_cast<NodeId>(v - 1));
        break;
    case Shape::Star:
        parents.push_back(kNoNode);
        for (std::size_t v = 1; v <= edges; ++v) parents.push_back(0);
        break;
    case Shape::Caterpillar: {
        // Every spine node gets a leaf child followed by the next spine node.
        parents.push_back(kNoNode);
        NodeId spine = 0;
        while (parents.size() <= edges) {
            parents.push_back(spine);
            if (parents.size() > edges) break;
            auto next = static_cast<NodeId>(parents.size());
            parents.push_back(spine);
            spine = next;
        }
        break;
    }
    case Shape::FullBinary: {
        std::size_t levels = 0;
        while ((std::size_t{2} << levels) - 2 < edges) ++levels;
        if ((std::size_t{2} << levels) - 2 != edges)
            throw std::invalid_argument("full_binary requires edges = 2^h - 2, got " +
                                        std::to_string(edges));
        // Preorder of a complete binary tree with `levels` levels below the root.
        parents.push_back(kNoNode);
        struct Frame {
            NodeId node;
            std::size_t depth;
            int emitted;
        };
        std::vector<Frame> frames{{0, 0, 0}};
        while (!frames.empty()) {
            auto& f = frames.back();
            if (f.depth == levels || f.emitted == 2) {
                frames.pop_back();
                continue;
            }
            ++f.emitted;
            Frame next{static_cast<NodeId>(parents.size()), f.depth + 1, 0};
            parents.push_back(f.node);
            frames.push_back(next);
        }
        break;
    }
    }

    std::vector<LabelId> labels(parents.size());
    for (auto& l : labels) l = static_cast<LabelId>(uniform_below(rng, alphabet));
    return Tree(generated_alphabet(alphabet), std::move(labels), std::move(parents));
}

std::vector<Tree> enumerate_trees(std::size_t max_edges, std::size_t alphabet) {
    if (max_edges > kMaxEnumerationEdges)
        throw std::length_error("enumeration limited to " + std::to_string(kMaxEnumerationEdges) +
                                " edges");
    if (alphabet == 0) throw std::invalid_argument("alphabet must contain at least one label");
    auto names = generated_alphabet(alphabet);
    std::vector<Tree> out;

    for (std::size_t edges = 1; edges <= max_edges; ++edges) {
        // All Dyck words of length 2*edges in lexicographic order (+1 first).
        std::vector<std::vector<NodeId>> shapes;
        std::vector<std::int8_t> word;
        auto extend = [&](auto&& self, std::size_t ups, std::size_t downs) -> void {
            if (ups == edges && downs == edges) {
                shapes.push_back(parents_from_steps(word));
                return;
            }
            if (ups < edges) {
                word.push_back(1);
                self(self, ups + 1, downs);
                word.pop_back();
            }
            if (downs < ups) {
                word.push_back(-1);
                self(self, ups, downs + 1);
                word.pop_back();
            }
        };
        extend(extend, 0, 0);

        for (const auto& parents : shapes) {
            std::vector<LabelId> labels(edges + 1, 0);
            for (;;) {
                out.emplace_back(names, labels, parents);
                std::size_t i = 0;
                while (i < labels.size() && ++labels[i] == alphabet) labels[i++] = 0;
                if (i == labels.size()) break;
            }
        }
    }
    return out;
}

} // namespace topdag
