#include "phaseq/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>

#include "json.hpp"

namespace phaseq {

void RunManifest::set(const std::string& key, const std::string& value) {
    config.emplace_back(key, value);
}
void RunManifest::set(const std::string& key, double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    config.emplace_back(key, buf);
}
void RunManifest::set(const std::string& key, long value) {
    config.emplace_back(key, std::to_string(value));
}

bool RunManifest::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

std::string RunManifest::to_json() const {
    nlohmann::ordered_json j;
    j["tool"] = "phaseq";
    j["version"] = tool_version;
    j["subcommand"] = subcommand;
    nlohmann::ordered_json cfg;
    for (const auto& [k, v] : config) cfg[k] = v;
    j["config"] = cfg;
    nlohmann::ordered_json cks = nlohmann::ordered_json::array();
    for (const auto& c : checks)
        cks.push_back({{"name", c.name}, {"value", c.value}, {"tolerance", c.tolerance},
                       {"pass", c.pass}});
    j["checks"] = cks;
    j["outputs"] = outputs;
    return j.dump(2) + "\n";
}

namespace {

void rgb_of(double t, int& r, int& g, int& b) {
    // simple blue-white-red diverging map on [-1, 1]
    t = std::max(-1.0, std::min(1.0, t));
    if (t >= 0) {
        r = 255;
        g = int(255 * (1.0 - t));
        b = int(255 * (1.0 - t));
    } else {
        r = int(255 * (1.0 + t));
        g = int(255 * (1.0 + t));
        b = 255;
    }
}

void raster(std::string& svg, const PhaseField& f, int x0, const std::function<double(cplx)>& v,
            double scale, int cell) {
    char buf[160];
    for (int iq = 0; iq < f.grid.n; ++iq)
        for (int ip = 0; ip < f.grid.n; ++ip) {
            int r, g, b;
            rgb_of(v(f.at(iq, ip)) / scale, r, g, b);
            std::snprintf(buf, sizeof buf,
                          "<rect x=\"%d\" y=\"%d\" width=\"%d\" height=\"%d\" fill=\"rgb(%d,%d,%d)\"/>\n",
                          x0 + iq * cell, (f.grid.n - 1 - ip) * cell, cell, cell, r, g, b);
            svg += buf;
        }
}

} // namespace

std::string field_to_svg(const PhaseField& f) {
    const int cell = std::max(1, 512 / f.grid.n);
    const int w = f.grid.n * cell;
    double scale = 1e-300;
    for (const cplx& v : f.samples) scale = std::max(scale, std::abs(v));
    std::string svg;
    char head[160];
    std::snprintf(head, sizeof head,
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" height=\"%d\">\n",
                  3 * w + 2 * cell, w);
    svg += head;
    raster(svg, f, 0, [](cplx v) { return std::abs(v); }, scale, cell);
    raster(svg, f, w + cell, [](cplx v) { return v.real(); }, scale, cell);
    raster(svg, f, 2 * (w + cell), [](cplx v) { return v.imag(); }, scale, cell);
    svg += "</svg>\n";
    return svg;
}

std::string scan_to_svg(const std::vector<std::pair<double, double>>& rows) {
    const int W = 480, H = 360, pad = 48;
    double lx0 = 1e300, lx1 = -1e300, ly0 = 1e300, ly1 = -1e300;
    for (const auto& [x, y] : rows) {
        const double lx = std::log10(x), ly = std::log10(std::max(y, 1e-300));
        lx0 = std::min(lx0, lx);
        lx1 = std::max(lx1, lx);
        ly0 = std::min(ly0, ly);
        ly1 = std::max(ly1, ly);
    }
    if (lx1 <= lx0) lx1 = lx0 + 1;
    if (ly1 <= ly0) ly1 = ly0 + 1;
    auto px = [&](double lx) { return pad + (lx - lx0) / (lx1 - lx0) * (W - 2 * pad); };
    auto py = [&](double ly) { return H - pad - (ly - ly0) / (ly1 - ly0) * (H - 2 * pad); };
    std::string svg;
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" height=\"%d\">\n", W, H);
    svg += buf;
    std::snprintf(buf, sizeof buf,
                  "<rect x=\"0\" y=\"0\" width=\"%d\" height=\"%d\" fill=\"white\"/>\n", W, H);
    svg += buf;
    std::string path = "M";
    for (const auto& [x, y] : rows) {
        std::snprintf(buf, sizeof buf, " %.1f %.1f", px(std::log10(x)),
                      py(std::log10(std::max(y, 1e-300))));
        path += buf;
    }
    svg += "<path d=\"" + path + "\" stroke=\"crimson\" fill=\"none\" stroke-width=\"2\"/>\n";
    for (const auto& [x, y] : rows) {
        std::snprintf(buf, sizeof buf, "<circle cx=\"%.1f\" cy=\"%.1f\" r=\"3\" fill=\"navy\"/>\n",
                      px(std::log10(x)), py(std::log10(std::max(y, 1e-300))));
        svg += buf;
    }
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%d\" y=\"%d\" font-size=\"12\">log10 error vs log10 hbar</text>\n",
                  pad, H - 12);
    svg += buf;
    svg += "</svg>\n";
    return svg;
}

} // namespace phaseq
