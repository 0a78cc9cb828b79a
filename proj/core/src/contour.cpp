#include <algorithm>
#include <cstdint>
#include <unordered_map>

#include "vennfan/regions.hpp"

namespace vennfan {

namespace {

// Drops interior points of straight runs; keeps the loop closed.
Polyline simplify_collinear(const Polyline& loop) {
  if (loop.size() < 4) return loop;
  Polyline open(loop.begin(), loop.end() - 1);
  Polyline out;
  const std::size_t m = open.size();
  for (std::size_t k = 0; k < m; ++k) {
    const Point prev = open[(k + m - 1) % m];
    const Point cur = open[k];
    const Point next = open[(k + 1) % m];
    if (std::abs(cross(cur - prev, next - cur)) > 1e-12 * (1.0 + norm(cur - prev) * norm(next - cur)))
      out.push_back(cur);
  }
  if (out.empty()) return loop;
  out.push_back(out.front());
  return out;
}

}  // namespace

std::vector<Polyline> cell_set_contours(const GridFrame& frame, std::span<const CellIndex> cells) {
  if (cells.empty()) return {};
  const int res = frame.resolution;
  int rmin = res, rmax = -1, cmin = res, cmax = -1;
  for (CellIndex c : cells) {
    const int r = c / res;
    const int col = c % res;
    rmin = std::min(rmin, r);
    rmax = std::max(rmax, r);
    cmin = std::min(cmin, col);
    cmax = std::max(cmax, col);
  }
  // Local lattice of cell centers padded by one empty cell on each side.
  const int row0 = rmin - 1;
  const int col0 = cmin - 1;
  const int H = rmax - rmin + 3;
  const int W = cmax - cmin + 3;
  std::vector<std::uint8_t> in(static_cast<std::size_t>(H) * W, 0);
  for (CellIndex c : cells) {
    const int r = c / res - row0;
    const int col = c % res - col0;
    in[static_cast<std::size_t>(r) * W + col] = 1;
  }
  auto inside = [&](int r, int c) { return in[static_cast<std::size_t>(r) * W + c] != 0; };

  // Edge vertices: horizontal edge (r, c)-(r, c+1) -> 2 * (r * W + c);
  // vertical edge (r, c)-(r+1, c) -> 2 * (r * W + c) + 1.
  auto hkey = [W](int r, int c) { return std::int64_t{2} * (std::int64_t{r} * W + c); };
  auto vkey = [W](int r, int c) { return std::int64_t{2} * (std::int64_t{r} * W + c) + 1; };
  const double h = frame.cell_size();
  auto vertex = [&](std::int64_t key) {
    const std::int64_t base = key / 2;
    const int r = static_cast<int>(base / W);
    const int c = static_cast<int>(base % W);
    const double x = -frame.extent + (col0 + c + 0.5) * h;
    const double y = -frame.extent + (row0 + r + 0.5) * h;
    return (key % 2 == 0) ? Point{x + 0.5 * h, y} : Point{x, y + 0.5 * h};
  };

  std::unordered_map<std::int64_t, std::int64_t> next;
  next.reserve(cells.size() * 2);
  for (int r = 0; r + 1 < H; ++r) {
    for (int c = 0; c + 1 < W; ++c) {
      // Corners counter-clockwise: bl, br, tr, tl; edge k joins corner k and k+1.
      const bool corner[4] = {inside(r, c), inside(r, c + 1), inside(r + 1, c + 1), inside(r + 1, c)};
      const std::int64_t edge[4] = {hkey(r, c), vkey(r, c + 1), hkey(r + 1, c), vkey(r, c)};
      for (int k = 0; k < 4; ++k) {
        if (!(corner[k] && !corner[(k + 1) % 4])) continue;
        // Pair with the nearest out->in edge walking backwards; this cuts each
        // inside corner off separately in saddle squares.
        for (int j = (k + 3) % 4; j != k; j = (j + 3) % 4) {
          if (!corner[j] && corner[(j + 1) % 4]) {
            next[edge[k]] = edge[j];
            break;
          }
        }
      }
    }
  }

  // Deterministic loop extraction: start from the smallest unvisited key.
  std::vector<std::int64_t> starts;
  starts.reserve(next.size());
  for (const auto& kv : next) starts.push_back(kv.first);
  std::sort(starts.begin(), starts.end());
  std::unordered_map<std::int64_t, bool> visited;
  visited.reserve(next.size());
  std::vector<Polyline> loops;
  for (std::int64_t s : starts) {
    if (visited[s]) continue;
    Polyline loop;
    std::int64_t k = s;
    while (!visited[k]) {
      visited[k] = true;
      loop.push_back(vertex(k));
      k = next.at(k);
    }
    loop.push_back(loop.front());
    loops.push_back(simplify_collinear(loop));
  }
  return loops;
}

}  // namespace vennfan
