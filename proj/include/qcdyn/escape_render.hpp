#pragma once

// Escape-time and attractor classification of orbits, and raster renders of
// filled Julia sets (dynamical plane) and connectedness loci (parameter
// plane).

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "qcdyn/core_map.hpp"

namespace qcdyn {

inline constexpr int kDefaultLocusIterations = 256;
inline constexpr int kDefaultJuliaIterations = 1000;

// Attractor detection parameters.
inline constexpr int kCycleWindow = 200;
inline constexpr int kMaxCyclePeriod = 100;
inline constexpr int kCycleConfirmations = 3;
inline constexpr double kCycleTolerance = 1e-6;

struct GridSpec {
    cplx center{0.0, 0.0};
    double width = 4.0;
    double height = 4.0;
    int nx = 256;
    int ny = 256;

    // Pixel centres; column i runs left to right, row j top to bottom.
    cplx sample(int i, int j) const;
    double pixel_width() const { return width / nx; }
    double pixel_height() const { return height / ny; }
    double pixel_diagonal() const;
};

// Throws DomainError on non-positive extents or pixel counts.
void validate(const GridSpec& g);

enum class CellStatus : std::uint8_t { Escaped, Bounded, Attracted };
enum class DetectMode { EscapeOnly, AttractorDetect };

const char* to_string(CellStatus s);

struct CellResult {
    CellStatus status = CellStatus::Bounded;
    int iterations = 0;  // Escaped: first n with |f^n(z0)| > R
    int period = 0;      // Attracted: minimal detected period
    double final_modulus = 0.0;

    friend bool operator==(const CellResult&, const CellResult&) = default;
};

struct Raster {
    GridSpec grid;
    int max_iter = 0;
    std::vector<CellResult> cells;  // row-major, row j at [j * nx, (j+1) * nx)

    const CellResult& at(int i, int j) const { return cells[static_cast<std::size_t>(j) * grid.nx + i]; }
};

// R = max(|c|, 2^{1/(2α-1)}); beyond R, |f(z)| >= 2|z| - |c| > |z|.
// For α <= 1/2 there is no geometric escape; a scale-covariant cut-off 64|c|
// is used instead (infinite when c = 0).
double escape_radius(const MapParams& p);

// With AttractorDetect, orbits that stay bounded are followed to at least
// max(200, max_iter/4) + 200 steps and the last 200 points are searched for a
// cycle of period <= 100. Escape is tested first at every step.
CellResult classify_point(const MapParams& p, cplx z0, int max_iter, DetectMode mode);

Raster render_julia(const MapParams& p, const GridSpec& g, int max_iter, DetectMode mode);

// Each cell is the critical orbit (z0 = 0) of the map with c = sample point.
Raster render_locus(double alpha, const GridSpec& g, int max_iter, DetectMode mode);

// Escaped: floor(255 n / max_iter) clamped to [0, 254]; Bounded: 0;
// Attracted: 128.
std::uint8_t gray_level(const CellResult& cell, int max_iter);

// Binary 8-bit PGM (P5), top row first.
void write_pgm(std::ostream& os, const Raster& r);

// "i,j,re,im,status,value"; value is the escape step, the period, or the
// final modulus for bounded cells.
void write_csv(std::ostream& os, const Raster& r);

}  // namespace qcdyn
