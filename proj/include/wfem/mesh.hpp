#pragma once
// Partitions a = x_1 < ... < x_N = b of the computational interval.

#include <vector>

namespace wfem {

struct Mesh1D {
    std::vector<double> nodes;  // strictly increasing, at least two

    int n_elements() const { return static_cast<int>(nodes.size()) - 1; }
    double a() const { return nodes.front(); }
    double b() const { return nodes.back(); }
    double xl(int i) const { return nodes[i]; }
    double xr(int i) const { return nodes[i + 1]; }
    double h_of(int i) const { return nodes[i + 1] - nodes[i]; }
    double h() const;  // max element size
};

Mesh1D make_mesh(std::vector<double> nodes);  // validates ordering
Mesh1D uniform_mesh(double a, double b, int n_elements);
double quasi_uniformity(const Mesh1D& mesh);  // max_i h / h_i, 1 iff uniform
Mesh1D bisect(const Mesh1D& mesh);            // split every element at its midpoint

}  // namespace wfem
