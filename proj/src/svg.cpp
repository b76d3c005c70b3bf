#include "locstat/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "locstat/stats/special.hpp"

namespace locstat {

namespace {

constexpr int kW = 640, kH = 420;
constexpr double kLeft = 60, kRight = 20, kTop = 30, kBottom = 50;

std::string header(const std::string& title) {
    char buf[512];
    std::snprintf(buf, sizeof(buf),
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" height=\"%d\" "
                  "viewBox=\"0 0 %d %d\" font-family=\"sans-serif\" font-size=\"12\">\n"
                  "<rect width=\"%d\" height=\"%d\" fill=\"white\"/>\n"
                  "<text x=\"%d\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">%s</text>\n",
                  kW, kH, kW, kH, kW, kH, kW / 2, title.c_str());
    return buf;
}

struct Scale {
    double xmin, xmax, ymin, ymax;
    double px(double x) const { return kLeft + (x - xmin) / (xmax - xmin) * (kW - kLeft - kRight); }
    double py(double y) const { return kH - kBottom - (y - ymin) / (ymax - ymin) * (kH - kTop - kBottom); }
};

std::string axes(const Scale& s, const std::string& xlabel, const std::string& ylabel) {
    char buf[1024];
    std::string out;
    std::snprintf(buf, sizeof(buf),
                  "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>\n"
                  "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>\n",
                  kLeft, kH - kBottom, static_cast<double>(kW - kRight), kH - kBottom, kLeft, kTop,
                  kLeft, kH - kBottom);
    out += buf;
    for (int i = 0; i <= 4; ++i) {
        const double fx = s.xmin + (s.xmax - s.xmin) * i / 4.0;
        const double fy = s.ymin + (s.ymax - s.ymin) * i / 4.0;
        std::snprintf(buf, sizeof(buf),
                      "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"middle\">%.3g</text>\n"
                      "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"end\">%.3g</text>\n",
                      s.px(fx), kH - kBottom + 18.0, fx, kLeft - 6.0, s.py(fy) + 4.0, fy);
        out += buf;
    }
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%d\" y=\"%d\" text-anchor=\"middle\">%s</text>\n"
                  "<text x=\"16\" y=\"%d\" text-anchor=\"middle\" transform=\"rotate(-90 16 %d)\">%s</text>\n",
                  (kW + static_cast<int>(kLeft)) / 2, kH - 12, xlabel.c_str(), kH / 2, kH / 2,
                  ylabel.c_str());
    out += buf;
    return out;
}

}  // namespace

std::string svg_count_histogram(std::span<const long> counts, double lambda) {
    long kmax = 0;
    for (long c : counts) kmax = std::max(kmax, c);
    kmax = std::max<long>(kmax, static_cast<long>(std::ceil(lambda)) + 3);
    std::vector<double> hist(kmax + 1, 0.0);
    for (long c : counts) hist[c] += 1.0 / static_cast<double>(counts.size());
    double ymax = 0.0;
    for (long k = 0; k <= kmax; ++k)
        ymax = std::max({ymax, hist[k], stats::poisson_pmf(k, lambda)});

    const Scale s{-0.5, kmax + 0.5, 0.0, ymax * 1.1 + 1e-12};
    std::string out = header("count histogram vs Poisson");
    char buf[512];
    for (long k = 0; k <= kmax; ++k) {
        const double x0 = s.px(k - 0.4), x1 = s.px(k + 0.4), y = s.py(hist[k]);
        std::snprintf(buf, sizeof(buf),
                      "<rect x=\"%.1f\" y=\"%.1f\" width=\"%.1f\" height=\"%.1f\" fill=\"#7aa6d6\"/>\n",
                      x0, y, x1 - x0, s.py(0.0) - y);
        out += buf;
    }
    for (long k = 0; k <= kmax; ++k) {
        std::snprintf(buf, sizeof(buf), "<circle cx=\"%.1f\" cy=\"%.1f\" r=\"3\" fill=\"#c03b2b\"/>\n",
                      s.px(static_cast<double>(k)), s.py(stats::poisson_pmf(k, lambda)));
        out += buf;
    }
    out += axes(s, "count", "frequency");
    out += "</svg>\n";
    return out;
}

std::string svg_gap_ecdf(std::span<const double> gaps, double lambda) {
    std::vector<double> sorted(gaps.begin(), gaps.end());
    std::sort(sorted.begin(), sorted.end());
    const double xmax = sorted.empty() ? 1.0 : sorted.back() * 1.05;
    const Scale s{0.0, std::max(xmax, 1e-9), 0.0, 1.0};
    std::string out = header("gap ECDF vs exponential");
    char buf[256];
    std::string path = "<path d=\"";
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%s%.1f %.1f ", i == 0 ? "M" : "L", s.px(sorted[i]),
                      s.py(static_cast<double>(i + 1) / sorted.size()));
        path += buf;
    }
    path += "\" fill=\"none\" stroke=\"#7aa6d6\" stroke-width=\"1.5\"/>\n";
    out += path;
    path = "<path d=\"";
    for (int i = 0; i <= 100; ++i) {
        const double x = s.xmin + (s.xmax - s.xmin) * i / 100.0;
        std::snprintf(buf, sizeof(buf), "%s%.1f %.1f ", i == 0 ? "M" : "L", s.px(x),
                      s.py(1.0 - std::exp(-lambda * x)));
        path += buf;
    }
    path += "\" fill=\"none\" stroke=\"#c03b2b\" stroke-dasharray=\"4 3\"/>\n";
    out += path;
    out += axes(s, "gap", "cumulative probability");
    out += "</svg>\n";
    return out;
}

std::string svg_cf_gap_heatmap(std::span<const double> grid, std::span<const double> gap_matrix) {
    const std::size_t g = grid.size();
    std::string out = header("CF factorization gap |phi_joint - phi1*phi2|");
    double vmax = 1e-12;
    for (double v : gap_matrix) vmax = std::max(vmax, v);
    const double cw = (kW - kLeft - kRight) / static_cast<double>(g);
    const double ch = (kH - kTop - kBottom) / static_cast<double>(g);
    char buf[256];
    for (std::size_t a = 0; a < g; ++a)
        for (std::size_t b = 0; b < g; ++b) {
            const double v = gap_matrix[a * g + b] / vmax;
            const int red = static_cast<int>(255 * v);
            const int blue = static_cast<int>(255 * (1.0 - v));
            std::snprintf(buf, sizeof(buf),
                          "<rect x=\"%.1f\" y=\"%.1f\" width=\"%.2f\" height=\"%.2f\" "
                          "fill=\"rgb(%d,40,%d)\"/>\n",
                          kLeft + b * cw, kTop + a * ch, cw, ch, red, blue);
            out += buf;
        }
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%d\" y=\"%d\" text-anchor=\"middle\">t-grid [%.2g, %.2g], max gap %.4g</text>\n",
                  kW / 2, kH - 12, grid.front(), grid.back(), vmax);
    out += buf;
    out += "</svg>\n";
    return out;
}

std::string svg_decay_fit(std::span<const long> separations, std::span<const double> means,
                          const DecayFit& fit) {
    std::vector<double> logs;
    double ymin = 0.0, ymax = -300.0;
    for (double m : means) {
        const double lv = m > 0 ? std::log(m) : -300.0;
        logs.push_back(lv);
        ymin = std::min(ymin, lv);
        ymax = std::max(ymax, lv);
    }
    const Scale s{static_cast<double>(separations.front()), static_cast<double>(separations.back()),
                  ymin - 0.5, ymax + 0.5};
    std::string out = header("fractional-moment decay (log scale)");
    char buf[256];
    for (std::size_t i = 0; i < logs.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "<circle cx=\"%.1f\" cy=\"%.1f\" r=\"3\" fill=\"#7aa6d6\"/>\n",
                      s.px(static_cast<double>(separations[i])), s.py(logs[i]));
        out += buf;
    }
    std::snprintf(buf, sizeof(buf),
                  "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"#c03b2b\"/>\n",
                  s.px(s.xmin), s.py(fit.intercept + fit.slope * s.xmin), s.px(s.xmax),
                  s.py(fit.intercept + fit.slope * s.xmax));
    out += buf;
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%d\" y=\"%d\" text-anchor=\"middle\">slope %.4g, R^2 %.3f</text>\n", kW / 2,
                  kH - 12, fit.slope, fit.r_squared);
    out += buf;
    out += axes(s, "separation |x-y|", "log mean |G|^s");
    return out + "</svg>\n";
}

}  // namespace locstat
