#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "srk/canonical.hpp"
#include "srk/mesh.hpp"

namespace srk {

enum class Activation { Identity, Relu, Sigmoid };

Activation activation_from_string(const std::string& s);
const char* activation_to_string(Activation a);

struct DenseLayer {
    size_t in = 0, out = 0;
    std::vector<float> weights; // row-major, out x in
    std::vector<float> bias;    // out
    Activation activation = Activation::Identity;
};

// Plane-generator network plus the fixed plane-to-convex membership matrix.
// Input is the latent code concatenated with a category one-hot; output is
// 4 values per plane (a, b, c, d) in the declared canonical frame.
struct BspDecoder {
    std::vector<DenseLayer> layers;
    std::vector<uint8_t> membership; // plane-major, planes x convexes
    size_t plane_count = 0;
    size_t convex_count = 0;
    size_t d_shape = 0;
    std::vector<std::string> categories;
    Frame frame = Frame::UnitMinCorner;

    void validate() const; // throws LoadError naming the offending field
    size_t category_index(const std::string& category) const;
};

// Half-spaces a*x + b*y + c*z + d <= 0 grouped into convexes by the
// membership matrix.
struct PlaneSet {
    std::vector<std::array<double, 4>> planes;
    std::vector<uint8_t> membership; // plane-major, planes x convexes
    size_t convex_count = 0;
    Frame frame = Frame::UnitMinCorner;

    bool member(size_t plane, size_t convex) const {
        return membership[plane * convex_count + convex] != 0;
    }
    // Convenience for single-convex sets: all planes belong to one convex.
    static PlaneSet single_convex(std::vector<std::array<double, 4>> planes,
                                  Frame frame = Frame::UnitMinCorner);
};

BspDecoder load_decoder(const std::string& path);
void save_decoder(const std::string& path, const BspDecoder& dec);

// Deterministic forward pass of (z concat one-hot(category)) through the
// layers. Throws InvalidInput on a dimension mismatch or unknown category.
PlaneSet decode_planes(const BspDecoder& dec, const std::vector<double>& z,
                       const std::string& category);

// True iff some convex has every member half-space satisfied at the point.
bool occupancy(const PlaneSet& ps, const Vec3& point);

// Polygonal surface of each convex: its half-spaces are intersected with the
// canonical bounding cube by polygon clipping, one face per non-redundant
// plane, fan-triangulated and concatenated across convexes with no boolean
// union. Faces wind with outward normals. Empty convexes contribute nothing.
TriMesh extract_mesh(const PlaneSet& ps);

// (1-t)*a + t*b. Throws InvalidInput when dimensions differ.
std::vector<double> interpolate_latent(const std::vector<double>& a,
                                       const std::vector<double>& b, double t);

} // namespace srk
