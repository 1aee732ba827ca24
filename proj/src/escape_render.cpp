#include "qcdyn/escape_render.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <ostream>

#include "qcdyn/errors.hpp"
#include "qcdyn/format.hpp"
#include "qcdyn/parallel.hpp"

namespace qcdyn {

cplx GridSpec::sample(int i, int j) const {
    const double x = center.real() - 0.5 * width + (i + 0.5) * pixel_width();
    const double y = center.imag() + 0.5 * height - (j + 0.5) * pixel_height();
    return {x, y};
}

double GridSpec::pixel_diagonal() const { return std::hypot(pixel_width(), pixel_height()); }

void validate(const GridSpec& g) {
    if (!(g.width > 0.0) || !(g.height > 0.0) || !std::isfinite(g.width) || !std::isfinite(g.height))
        throw DomainError("grid extents must be positive and finite");
    if (g.nx < 1 || g.ny < 1) throw DomainError("grid needs at least one pixel in each direction");
}

const char* to_string(CellStatus s) {
    switch (s) {
        case CellStatus::Escaped: return "escaped";
        case CellStatus::Bounded: return "bounded";
        case CellStatus::Attracted: return "attracted";
    }
    return "unknown";
}

double escape_radius(const MapParams& p) {
    const double mc = std::abs(p.c);
    if (p.alpha <= 0.5) return mc > 0.0 ? 64.0 * mc : std::numeric_limits<double>::infinity();
    return std::max(mc, std::pow(2.0, 1.0 / (2.0 * p.alpha - 1.0)));
}

namespace {

int detect_period(const std::array<cplx, kCycleWindow>& ring, int head) {
    // ring[(head + k) % N] is the k-th oldest point of the window.
    auto at = [&](int k) { return ring[(head + k) % kCycleWindow]; };
    for (int q = 1; q <= kMaxCyclePeriod; ++q) {
        bool ok = true;
        for (int t = 1; t <= kCycleConfirmations && ok; ++t) {
            const int n = kCycleWindow - q - t;
            ok = std::abs(at(n + q) - at(n)) < kCycleTolerance;
        }
        if (ok) return q;
    }
    return 0;
}

}  // namespace

CellResult classify_point(const MapParams& p, cplx z0, int max_iter, DetectMode mode) {
    if (max_iter < 1) throw DomainError("max_iter must be at least 1");
    const double radius = escape_radius(p);
    CellResult out;
    cplx z = z0;
    if (std::abs(z) > radius) {
        out.status = CellStatus::Escaped;
        out.final_modulus = std::abs(z);
        return out;
    }

    const bool detect = mode == DetectMode::AttractorDetect;
    const int warmup = std::max(200, max_iter / 4);
    const int total = detect ? std::max(max_iter, warmup + kCycleWindow) : max_iter;
    std::array<cplx, kCycleWindow> ring{};
    int head = 0;

    for (int n = 1; n <= total; ++n) {
        z = apply_map(p, z);
        const double m = std::abs(z);
        if (!(m <= radius)) {
            out.final_modulus = m;
            if (n <= max_iter) {
                out.status = CellStatus::Escaped;
                out.iterations = n;
            }
            // Escape after the counted budget still reads as bounded.
            return out;
        }
        if (detect) {
            ring[head] = z;
            head = (head + 1) % kCycleWindow;
        }
    }
    out.final_modulus = std::abs(z);
    if (detect) {
        if (const int q = detect_period(ring, head); q > 0) {
            out.status = CellStatus::Attracted;
            out.period = q;
        }
    }
    return out;
}

namespace {

template <typename CellFn>
Raster render(const GridSpec& g, int max_iter, CellFn&& cell) {
    validate(g);
    if (max_iter < 1) throw DomainError("max_iter must be at least 1");
    Raster r{g, max_iter, std::vector<CellResult>(static_cast<std::size_t>(g.nx) * g.ny)};
    parallel_for(static_cast<std::size_t>(g.ny), [&](std::size_t j) {
        for (int i = 0; i < g.nx; ++i) r.cells[j * g.nx + i] = cell(g.sample(i, static_cast<int>(j)));
    });
    return r;
}

}  // namespace

Raster render_julia(const MapParams& p, const GridSpec& g, int max_iter, DetectMode mode) {
    return render(g, max_iter, [&](cplx z) { return classify_point(p, z, max_iter, mode); });
}

Raster render_locus(double alpha, const GridSpec& g, int max_iter, DetectMode mode) {
    return render(g, max_iter,
                  [&](cplx c) { return classify_point(MapParams{alpha, c}, cplx(0.0, 0.0), max_iter, mode); });
}

std::uint8_t gray_level(const CellResult& cell, int max_iter) {
    switch (cell.status) {
        case CellStatus::Bounded: return 0;
        case CellStatus::Attracted: return 128;
        case CellStatus::Escaped: {
            const long v = (255L * cell.iterations) / std::max(1, max_iter);
            return static_cast<std::uint8_t>(std::clamp(v, 0L, 254L));
        }
    }
    return 0;
}

void write_pgm(std::ostream& os, const Raster& r) {
    os << "P5\n" << r.grid.nx << ' ' << r.grid.ny << "\n255\n";
    std::vector<char> row(static_cast<std::size_t>(r.grid.nx));
    for (int j = 0; j < r.grid.ny; ++j) {
        for (int i = 0; i < r.grid.nx; ++i) row[i] = static_cast<char>(gray_level(r.at(i, j), r.max_iter));
        os.write(row.data(), static_cast<std::streamsize>(row.size()));
    }
}

void write_csv(std::ostream& os, const Raster& r) {
    os << "i,j,re,im,status,value\n";
    for (int j = 0; j < r.grid.ny; ++j)
        for (int i = 0; i < r.grid.nx; ++i) {
            const CellResult& c = r.at(i, j);
            const cplx s = r.grid.sample(i, j);
            os << i << ',' << j << ',' << fmt_double(s.real()) << ',' << fmt_double(s.imag()) << ','
               << to_string(c.status) << ',';
            switch (c.status) {
                case CellStatus::Escaped: os << c.iterations; break;
                case CellStatus::Attracted: os << c.period; break;
                case CellStatus::Bounded: os << fmt_double(c.final_modulus); break;
            }
            os << '\n';
        }
}

}  // namespace qcdyn
