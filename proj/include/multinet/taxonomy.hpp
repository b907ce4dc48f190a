#pragma once

#include <string>
#include <vector>

#include "multinet/corr.hpp"

namespace multinet {

// One agglomeration step. Cluster ids follow the usual linkage convention:
// 0..C-1 are leaves, C + step is the cluster created at that step.
struct Merge {
    int a = 0;
    int b = 0;
    double height = 0.0;
    int size = 0;  // leaves in the new cluster
};

struct Dendrogram {
    std::vector<std::string> leaves;  // layer codes, index = leaf id
    std::vector<Merge> merges;        // exactly leaves.size() - 1 entries
};

// Complete-linkage agglomeration: repeatedly merge the two clusters at
// minimal inter-cluster distance, where the distance between clusters is
// the maximum pairwise leaf distance. Distance ties are broken by the
// lexicographically smallest pair of cluster representatives (a cluster is
// represented by its smallest leaf label).
Dendrogram complete_linkage(const LayerDistanceMatrix& dist);

// Cophenetic distance: the height of the lowest common merge of two leaves.
Eigen::MatrixXd cophenetic(const Dendrogram& dendro);

// Clusters formed by merges with height <= cut; ids are 0..k-1 in order of
// each cluster's smallest leaf.
std::vector<int> cut_tree(const Dendrogram& dendro, double height);

// Newick string with branch lengths chosen so every leaf-to-root path sums
// to the root merge height; children ordered by smallest contained label.
std::string to_newick(const Dendrogram& dendro);

}  // namespace multinet
