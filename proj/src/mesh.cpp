#include "wfem/mesh.hpp"

#include <algorithm>
#include <stdexcept>

namespace wfem {

double Mesh1D::h() const {
    double hmax = 0.0;
    for (int i = 0; i < n_elements(); ++i) hmax = std::max(hmax, h_of(i));
    return hmax;
}

Mesh1D make_mesh(std::vector<double> nodes) {
    if (nodes.size() < 2) throw std::invalid_argument("make_mesh: need at least two nodes");
    for (size_t i = 1; i < nodes.size(); ++i)
        if (!(nodes[i] > nodes[i - 1]))
            throw std::invalid_argument("make_mesh: nodes must increase strictly");
    return Mesh1D{std::move(nodes)};
}

Mesh1D uniform_mesh(double a, double b, int n_elements) {
    if (!(a < b)) throw std::invalid_argument("uniform_mesh: interval must satisfy a < b");
    if (n_elements < 1) throw std::invalid_argument("uniform_mesh: need at least one element");
    std::vector<double> nodes(n_elements + 1);
    for (int i = 0; i <= n_elements; ++i)
        nodes[i] = a + (b - a) * static_cast<double>(i) / n_elements;
    nodes.front() = a;
    nodes.back() = b;
    return Mesh1D{std::move(nodes)};
}

double quasi_uniformity(const Mesh1D& mesh) {
    double hmax = mesh.h();
    double ratio = 1.0;
    for (int i = 0; i < mesh.n_elements(); ++i)
        ratio = std::max(ratio, hmax / mesh.h_of(i));
    return ratio;
}

Mesh1D bisect(const Mesh1D& mesh) {
    std::vector<double> nodes;
    nodes.reserve(2 * mesh.nodes.size() - 1);
    for (int i = 0; i < mesh.n_elements(); ++i) {
        nodes.push_back(mesh.xl(i));
        nodes.push_back(0.5 * (mesh.xl(i) + mesh.xr(i)));
    }
    nodes.push_back(mesh.b());
    return Mesh1D{std::move(nodes)};
}

}  // namespace wfem
