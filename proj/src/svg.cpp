#include "castlab/svg.hpp"

#include <algorithm>
#include <sstream>

#include "castlab/error.hpp"
#include "castlab/report.hpp"

namespace castlab {

namespace {

constexpr double kWidth = 640;
constexpr double kHeight = 400;
constexpr double kLeft = 60;
constexpr double kRight = 20;
constexpr double kTop = 40;
constexpr double kBottom = 50;
constexpr double kPlotW = kWidth - kLeft - kRight;
constexpr double kPlotH = kHeight - kTop - kBottom;

std::string num(double v) { return format_fixed(v, 2); }

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

void open_document(std::ostringstream& o, std::string_view title) {
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kWidth) << "\" height=\""
    << num(kHeight) << "\" viewBox=\"0 0 " << num(kWidth) << ' ' << num(kHeight) << "\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << num(kWidth / 2) << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
    << "font-size=\"16\">" << escape(title) << "</text>\n";
}

// Axes box plus grey-level ticks 0..255 along x.
void grey_level_x_axis(std::ostringstream& o) {
  o << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\"" << num(kPlotW)
    << "\" height=\"" << num(kPlotH) << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int level : {0, 50, 100, 150, 200, 255}) {
    const double x = kLeft + kPlotW * (level + 0.5) / 256.0;
    o << "<line x1=\"" << num(x) << "\" y1=\"" << num(kTop + kPlotH) << "\" x2=\"" << num(x)
      << "\" y2=\"" << num(kTop + kPlotH + 5) << "\" stroke=\"black\"/>\n";
    o << "<text x=\"" << num(x) << "\" y=\"" << num(kTop + kPlotH + 18)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << level
      << "</text>\n";
  }
  o << "<text x=\"" << num(kLeft + kPlotW / 2) << "\" y=\"" << num(kHeight - 10)
    << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">grey level</text>\n";
}

void y_label(std::ostringstream& o, std::string_view label) {
  o << "<text x=\"16\" y=\"" << num(kTop + kPlotH / 2) << "\" text-anchor=\"middle\" "
    << "font-family=\"sans-serif\" font-size=\"12\" transform=\"rotate(-90 16 "
    << num(kTop + kPlotH / 2) << ")\">" << escape(label) << "</text>\n";
}

}  // namespace

std::string histogram_svg(const Histogram& h, std::string_view title) {
  std::ostringstream o;
  open_document(o, title);
  grey_level_x_axis(o);
  y_label(o, "% of pixels");

  const double total = h.total ? static_cast<double>(h.total) : 1.0;
  const std::uint64_t peak = *std::max_element(h.bins.begin(), h.bins.end());
  const double top_percent = peak ? 100.0 * static_cast<double>(peak) / total : 1.0;
  for (double frac : {0.0, 0.5, 1.0}) {
    const double y = kTop + kPlotH * (1.0 - frac);
    o << "<text x=\"" << num(kLeft - 6) << "\" y=\"" << num(y + 4)
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
      << format_fixed(top_percent * frac, 3) << "</text>\n";
  }

  const double bar_w = kPlotW / 256.0;
  o << "<g fill=\"steelblue\">\n";
  for (int level = 0; level < kGreyLevels; ++level) {
    const double pct = 100.0 * static_cast<double>(h.bins[level]) / total;
    const double bar_h = peak ? kPlotH * pct / top_percent : 0.0;
    o << "<rect x=\"" << num(kLeft + bar_w * level) << "\" y=\"" << num(kTop + kPlotH - bar_h)
      << "\" width=\"" << num(bar_w) << "\" height=\"" << num(bar_h) << "\"/>\n";
  }
  o << "</g>\n</svg>\n";
  return o.str();
}

std::string scatter_svg(const CorrelationSample& s, std::string_view title) {
  if (s.pairs.empty()) throw Error(ErrorKind::InvalidArgument, "scatter plot of an empty sample");
  std::ostringstream o;
  open_document(o, title);
  grey_level_x_axis(o);
  y_label(o, "grey level of neighbour");
  for (int level : {0, 128, 255}) {
    const double y = kTop + kPlotH * (1.0 - (level + 0.5) / 256.0);
    o << "<text x=\"" << num(kLeft - 6) << "\" y=\"" << num(y + 4)
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << level << "</text>\n";
  }
  o << "<g fill=\"black\" fill-opacity=\"0.6\">\n";
  for (const PixelPair& p : s.pairs) {
    const double x = kLeft + kPlotW * (p.x + 0.5) / 256.0;
    const double y = kTop + kPlotH * (1.0 - (p.y + 0.5) / 256.0);
    o << "<circle cx=\"" << num(x) << "\" cy=\"" << num(y) << "\" r=\"1.5\"/>\n";
  }
  o << "</g>\n</svg>\n";
  return o.str();
}

namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
  write_file(path, std::span<const std::uint8_t>(reinterpret_cast<const std::uint8_t*>(text.data()),
                                                 text.size()));
}

}  // namespace

void plot_histogram_svg(const Histogram& h, const std::filesystem::path& path, std::string_view title) {
  write_text(path, histogram_svg(h, title));
}

void plot_scatter_svg(const CorrelationSample& s, const std::filesystem::path& path,
                      std::string_view title) {
  write_text(path, scatter_svg(s, title));
}

}  // namespace castlab
