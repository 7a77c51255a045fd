#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "bienayme/dist.hpp"
#include "bienayme/rng.hpp"
#include "bienayme/sample.hpp"

namespace bienayme {

// Labels are 1..n throughout. d[i] is the number of children of label i+1.
using DegreeSequence = std::vector<i64>;
using FFSequence = std::vector<i64>;

struct LabeledTree {
    i64 root = 1;
    std::vector<i64> parent;  // parent[i] = parent label of label i+1, 0 for the root

    std::size_t size() const { return parent.size(); }
    std::vector<i64> degrees() const;
    // sorted edge list (parent, child)
    std::vector<std::pair<i64, i64>> edges() const;
    bool operator==(const LabeledTree& o) const { return root == o.root && parent == o.parent; }
    bool operator<(const LabeledTree& o) const {
        return root != o.root ? root < o.root : parent < o.parent;
    }
};

struct Compression {
    DegreeSequence compressed;
    std::vector<i64> perm;  // perm[i] = new label of old label i+1
};

bool is_degree_sequence(const DegreeSequence& d);
bool is_compressed(const DegreeSequence& d);
Compression compress(const DegreeSequence& d);

LabeledTree ff_decode(const FFSequence& v, const DegreeSequence& d);
FFSequence ff_encode(const LabeledTree& t);

std::uint64_t count_Sd(const DegreeSequence& d);
// every word of S_d in lexicographic order
std::vector<FFSequence> enumerate_Sd(const DegreeSequence& d);

LabeledTree relabel(const LabeledTree& t, const std::vector<i64>& new_label_of);
LabeledTree sample_tree_with_degrees(const DegreeSequence& d, Philox& rng);
LabeledTree hat_Tn(const OffspringDist& d, i64 n, Philox& rng, i64 max_tries);

i64 height(const LabeledTree& t);

// exact law of the height of a uniform element of T_d: height -> |{t in T_d}|
std::map<i64, std::uint64_t> height_counts(const DegreeSequence& d);

enum class Skew { more_skewed, less_skewed, equal, incomparable };
// d more_skewed than d2 when d2 is reached from d by moving single children
// from larger to smaller degrees (majorization of the sorted sequences)
Skew compare_skew(const DegreeSequence& d, const DegreeSequence& d2);
const char* to_string(Skew s);

}  // namespace bienayme
