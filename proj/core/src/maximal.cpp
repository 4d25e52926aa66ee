#include "pdolab/maximal.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <stdexcept>

namespace pdolab {

CubeFamily::CubeFamily(const Grid& g) : grid_(g) {
    int G = 0;
    while ((2 << G) <= g.points_per_axis()) ++G;  // G = floor(log2 N)
    num_scales_ = G + 1;
}

namespace detail {

namespace {

// Sliding sums of width w along one axis of a line with periodic wrap,
// out[s] = sum_{t=0}^{w-1} line[(s+t) mod N].  Prefix sums over the doubled line.
void line_window_sums(const double* line, double* out, int N, int w, std::vector<double>& prefix) {
    prefix.resize(static_cast<std::size_t>(N + w));
    prefix[0] = 0.0;
    for (int i = 0; i < N + w - 1; ++i) prefix[i + 1] = prefix[i] + line[i % N];
    for (int s = 0; s < N; ++s) out[s] = prefix[s + w] - prefix[s];
}

// Monotone-deque sliding maximum: out[x] = max_{s in [x-w+1, x]} line[s mod N].
void line_window_max(const double* line, double* out, int N, int w) {
    std::deque<int> q;  // indices into the extended range, values decreasing
    const int lo = -(w - 1);
    for (int i = lo; i < N; ++i) {
        const double v = line[((i % N) + N) % N];
        while (!q.empty() && line[((q.back() % N) + N) % N] <= v) q.pop_back();
        q.push_back(i);
        if (q.front() <= i - w) q.pop_front();
        if (i >= 0) out[i] = line[((q.front() % N) + N) % N];
    }
}

template <typename LineOp>
void for_each_line(std::vector<double>& v, const Grid& g, int axis, LineOp&& op) {
    const int N = g.points_per_axis();
    if (g.dim() == 1) {
        op(v.data(), 1);
        return;
    }
    if (axis == 1) {
        for (int r = 0; r < N; ++r) op(v.data() + static_cast<std::size_t>(r) * N, 1);
    } else {
        for (int c = 0; c < N; ++c) op(v.data() + c, N);
    }
}

// Gather a strided line into scratch, apply, scatter back.
template <typename Kernel>
auto strided(Kernel&& k, int N) {
    return [k = std::forward<Kernel>(k), N](double* base, int stride) mutable {
        if (stride == 1) {
            k(base);
            return;
        }
        static thread_local std::vector<double> in;
        in.resize(N);
        for (int i = 0; i < N; ++i) in[i] = base[static_cast<std::size_t>(i) * stride];
        k(in.data());
        for (int i = 0; i < N; ++i) base[static_cast<std::size_t>(i) * stride] = in[i];
    };
}

}  // namespace

std::vector<double> window_sums(const std::vector<double>& v, const Grid& g, int w) {
    const int N = g.points_per_axis();
    std::vector<double> out = v;
    std::vector<double> prefix, tmp(N);
    for (int axis = 0; axis < g.dim(); ++axis) {
        for_each_line(out, g, axis, strided([&](double* line) {
                          line_window_sums(line, tmp.data(), N, w, prefix);
                          std::copy(tmp.begin(), tmp.end(), line);
                      }, N));
    }
    return out;
}

std::vector<double> max_over_covering_windows(const std::vector<double>& v, const Grid& g, int w) {
    const int N = g.points_per_axis();
    std::vector<double> out = v;
    std::vector<double> tmp(N);
    for (int axis = 0; axis < g.dim(); ++axis) {
        for_each_line(out, g, axis, strided([&](double* line) {
                          line_window_max(line, tmp.data(), N, w);
                          std::copy(tmp.begin(), tmp.end(), line);
                      }, N));
    }
    return out;
}

}  // namespace detail

namespace {

std::vector<double> abs_values(const GridFunction& u) {
    std::vector<double> r(u.values.size());
    for (std::size_t k = 0; k < r.size(); ++k) r[k] = std::abs(u.values[k]);
    return r;
}

GridFunction real_grid_function(const Grid& g, const std::vector<double>& v) {
    GridFunction out(g);
    for (std::size_t k = 0; k < v.size(); ++k) out.values[k] = cplx(v[k], 0.0);
    return out;
}

GridFunction maximal_of(const std::vector<double>& base, const CubeFamily& fam) {
    const Grid& g = fam.grid();
    std::vector<double> best(g.size(), 0.0);
    for (int s = 0; s < fam.num_scales(); ++s) {
        const int w = fam.window(s);
        std::vector<double> sums = detail::window_sums(base, g, w);
        const double cells = std::pow(static_cast<double>(w), g.dim());
        for (auto& x : sums) x /= cells;
        std::vector<double> covered = detail::max_over_covering_windows(sums, g, w);
        for (std::size_t k = 0; k < best.size(); ++k) best[k] = std::max(best[k], covered[k]);
    }
    return real_grid_function(g, best);
}

// Running median with absolute-deviation sums.  Two multisets split at the
// lower median; sums track each side so sum|v - median| is O(1) per query.
class MedianDeviation {
  public:
    void insert(double x) {
        if (low_.empty() || x <= *low_.rbegin()) {
            low_.insert(x);
            sum_low_ += x;
        } else {
            high_.insert(x);
            sum_high_ += x;
        }
        rebalance();
    }

    void erase(double x) {
        auto it = low_.find(x);
        if (it != low_.end()) {
            low_.erase(it);
            sum_low_ -= x;
        } else {
            high_.erase(high_.find(x));
            sum_high_ -= x;
        }
        rebalance();
    }

    double deviation_sum() const {
        const double med = *low_.rbegin();
        return med * static_cast<double>(low_.size()) - sum_low_ +
               sum_high_ - med * static_cast<double>(high_.size());
    }

  private:
    void rebalance() {
        // |low| = ceil(k/2)
        while (low_.size() > high_.size() + 1) {
            auto it = std::prev(low_.end());
            sum_low_ -= *it;
            sum_high_ += *it;
            high_.insert(*it);
            low_.erase(it);
        }
        while (low_.size() < high_.size()) {
            auto it = high_.begin();
            sum_high_ -= *it;
            sum_low_ += *it;
            low_.insert(*it);
            high_.erase(it);
        }
    }

    std::multiset<double> low_, high_;
    double sum_low_ = 0.0, sum_high_ = 0.0;
};

// Per-start mean |r - median(window)| for every width-w window, periodic.
std::vector<double> median_deviation_means(const std::vector<double>& r, const Grid& g, int w) {
    const int N = g.points_per_axis();
    std::vector<double> out(g.size(), 0.0);
    if (g.dim() == 1) {
        MedianDeviation md;
        for (int t = 0; t < w; ++t) md.insert(r[t % N]);
        for (int s = 0; s < N; ++s) {
            out[s] = md.deviation_sum() / w;
            md.erase(r[s % N]);
            md.insert(r[(s + w) % N]);
        }
    } else {
        const double cells = static_cast<double>(w) * w;
        for (int i = 0; i < N; ++i) {
            MedianDeviation md;
            for (int di = 0; di < w; ++di)
                for (int j = 0; j < w; ++j) md.insert(r[g.flatten((i + di) % N, j % N)]);
            for (int j = 0; j < N; ++j) {
                out[g.flatten(i, j)] = md.deviation_sum() / cells;
                for (int di = 0; di < w; ++di) {
                    md.erase(r[g.flatten((i + di) % N, j % N)]);
                    md.insert(r[g.flatten((i + di) % N, (j + w) % N)]);
                }
            }
        }
    }
    return out;
}

// Per-start mean |u - mean(window)|; complex allowed.
std::vector<double> mean_deviation_means(const GridFunction& u, const Grid& g, int w) {
    const int N = g.points_per_axis();
    const double cells = std::pow(static_cast<double>(w), g.dim());

    std::vector<double> re(u.values.size()), im(u.values.size());
    for (std::size_t k = 0; k < u.values.size(); ++k) {
        re[k] = u.values[k].real();
        im[k] = u.values[k].imag();
    }
    const std::vector<double> mre = detail::window_sums(re, g, w);
    const std::vector<double> mim = detail::window_sums(im, g, w);

    std::vector<double> out(g.size(), 0.0);
    if (g.dim() == 1) {
        for (int s = 0; s < N; ++s) {
            const cplx c(mre[s] / cells, mim[s] / cells);
            double acc = 0.0;
            for (int t = 0; t < w; ++t) acc += std::abs(u.values[(s + t) % N] - c);
            out[s] = acc / cells;
        }
    } else {
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) {
                const std::size_t s = g.flatten(i, j);
                const cplx c(mre[s] / cells, mim[s] / cells);
                double acc = 0.0;
                for (int di = 0; di < w; ++di)
                    for (int dj = 0; dj < w; ++dj)
                        acc += std::abs(u.values[g.flatten((i + di) % N, (j + dj) % N)] - c);
                out[s] = acc / cells;
            }
    }
    return out;
}

}  // namespace

GridFunction hl_maximal(const GridFunction& u, const CubeFamily& fam) {
    if (u.grid != fam.grid()) throw ConfigError("hl_maximal: grid mismatch");
    return maximal_of(abs_values(u), fam);
}

GridFunction maximal_p(const GridFunction& u, double p, const CubeFamily& fam) {
    if (u.grid != fam.grid()) throw ConfigError("maximal_p: grid mismatch");
    if (!(p > 0.0)) throw ConfigError("maximal_p: p must be positive");
    std::vector<double> base = abs_values(u);
    for (auto& x : base) x = std::pow(x, p);
    GridFunction m = maximal_of(base, fam);
    for (auto& v : m.values) v = cplx(std::pow(v.real(), 1.0 / p), 0.0);
    return m;
}

GridFunction sharp_maximal(const GridFunction& u, const CubeFamily& fam, SharpMode mode) {
    const Grid& g = fam.grid();
    if (u.grid != g) throw ConfigError("sharp_maximal: grid mismatch");

    std::vector<double> r;
    if (mode == SharpMode::median) {
        r.resize(u.values.size());
        for (std::size_t k = 0; k < r.size(); ++k) {
            if (u.values[k].imag() != 0.0)
                throw ConfigError("sharp_maximal: median mode requires real-valued input");
            r[k] = u.values[k].real();
        }
    }

    std::vector<double> best(g.size(), 0.0);
    for (int s = 0; s < fam.num_scales(); ++s) {
        const int w = fam.window(s);
        std::vector<double> dev = (mode == SharpMode::median)
                                      ? median_deviation_means(r, g, w)
                                      : mean_deviation_means(u, g, w);
        std::vector<double> covered = detail::max_over_covering_windows(dev, g, w);
        for (std::size_t k = 0; k < best.size(); ++k) best[k] = std::max(best[k], covered[k]);
    }
    return real_grid_function(g, best);
}

GridFunction sharp_maximal_eps(const GridFunction& u, double eps, const CubeFamily& fam) {
    if (!(eps > 0.0) || !(eps < 1.0)) throw ConfigError("sharp_maximal_eps: eps must lie in (0,1)");
    GridFunction pw(u.grid);
    for (std::size_t k = 0; k < u.values.size(); ++k)
        pw.values[k] = cplx(std::pow(std::abs(u.values[k]), eps), 0.0);
    GridFunction m = sharp_maximal(pw, fam, SharpMode::median);
    for (auto& v : m.values) v = cplx(std::pow(v.real(), 1.0 / eps), 0.0);
    return m;
}

}  // namespace pdolab
