#include "logosym/corpus.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <iostream>
#include <numbers>
#include <random>
#include <stdexcept>

#include "logosym/errors.hpp"

namespace fs = std::filesystem;

namespace logosym {

std::vector<int> LabeledCorpus::labels() const {
  std::vector<int> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.label);
  return out;
}

std::vector<std::size_t> LabeledCorpus::class_counts() const {
  std::vector<std::size_t> out(class_names.size(), 0);
  for (const auto& e : entries) ++out.at(e.label);
  return out;
}

ImageBuffer LabeledCorpus::image(std::size_t i) const {
  const auto& e = entries.at(i);
  if (e.image) return *e.image;
  return read_image(e.path);
}

LabeledCorpus load_corpus(const fs::path& root) {
  if (!fs::is_directory(root)) throw DataError("corpus root is not a directory: " + root.string());
  std::vector<fs::path> class_dirs;
  for (const auto& de : fs::directory_iterator(root))
    if (de.is_directory()) class_dirs.push_back(de.path());
  std::sort(class_dirs.begin(), class_dirs.end(),
            [](const fs::path& a, const fs::path& b) { return a.filename() < b.filename(); });
  if (class_dirs.size() < 2)
    throw DataError("need >= 2 classes, found " + std::to_string(class_dirs.size()) +
                    " class directories under " + root.string());

  LabeledCorpus corpus;
  for (std::size_t c = 0; c < class_dirs.size(); ++c) {
    corpus.class_names.push_back(class_dirs[c].filename().string());
    std::vector<fs::path> files;
    for (const auto& de : fs::directory_iterator(class_dirs[c]))
      if (de.is_regular_file()) files.push_back(de.path());
    std::sort(files.begin(), files.end());
    std::size_t kept = 0;
    for (const auto& f : files) {
      try {
        read_image(f).validate();
      } catch (const InvalidImage& e) {
        std::cerr << "warning: skipping " << f.string() << ": " << e.what() << '\n';
        ++corpus.skipped;
        continue;
      }
      corpus.entries.push_back({f.string(), std::nullopt, static_cast<int>(c)});
      ++kept;
    }
    if (kept == 0) throw DataError("class directory has no readable images: " + class_dirs[c].string());
  }
  return corpus;
}

namespace {

using Rgb = std::array<std::uint8_t, 3>;

struct Point {
  double x, y;
};

class Canvas {
 public:
  Canvas(int size, Rgb background) : img_(size, size, 3) {
    for (int y = 0; y < size; ++y)
      for (int x = 0; x < size; ++x) set(x, y, background);
  }

  void set(int x, int y, const Rgb& c) {
    if (x < 0 || y < 0 || x >= img_.width || y >= img_.height) return;
    for (int k = 0; k < 3; ++k) img_.at(x, y, k) = c[k];
  }

  // Thick segment: every pixel whose center lies within half the width.
  void line(Point a, Point b, double width, const Rgb& c) {
    const double r = width / 2.0;
    const int x0 = static_cast<int>(std::floor(std::min(a.x, b.x) - r));
    const int x1 = static_cast<int>(std::ceil(std::max(a.x, b.x) + r));
    const int y0 = static_cast<int>(std::floor(std::min(a.y, b.y) - r));
    const int y1 = static_cast<int>(std::ceil(std::max(a.y, b.y) + r));
    const double dx = b.x - a.x, dy = b.y - a.y;
    const double len2 = dx * dx + dy * dy;
    for (int y = y0; y <= y1; ++y)
      for (int x = x0; x <= x1; ++x) {
        const double px = x + 0.5, py = y + 0.5;
        double t = len2 > 0 ? ((px - a.x) * dx + (py - a.y) * dy) / len2 : 0.0;
        t = std::clamp(t, 0.0, 1.0);
        const double ex = px - (a.x + t * dx), ey = py - (a.y + t * dy);
        if (ex * ex + ey * ey <= r * r) set(x, y, c);
      }
  }

  // Even-odd polygon fill with a two-color stripe pattern.
  void polygon(const std::vector<Point>& pts, const Rgb& fill, const Rgb& hatch,
               double hatch_angle, double hatch_period) {
    double xmin = pts[0].x, xmax = pts[0].x, ymin = pts[0].y, ymax = pts[0].y;
    for (const auto& p : pts) {
      xmin = std::min(xmin, p.x);
      xmax = std::max(xmax, p.x);
      ymin = std::min(ymin, p.y);
      ymax = std::max(ymax, p.y);
    }
    const double ca = std::cos(hatch_angle), sa = std::sin(hatch_angle);
    for (int y = static_cast<int>(std::floor(ymin)); y <= static_cast<int>(std::ceil(ymax)); ++y)
      for (int x = static_cast<int>(std::floor(xmin)); x <= static_cast<int>(std::ceil(xmax)); ++x) {
        const double px = x + 0.5, py = y + 0.5;
        bool inside = false;
        for (std::size_t i = 0, j = pts.size() - 1; i < pts.size(); j = i++) {
          if ((pts[i].y > py) != (pts[j].y > py) &&
              px < (pts[j].x - pts[i].x) * (py - pts[i].y) / (pts[j].y - pts[i].y) + pts[i].x)
            inside = !inside;
        }
        if (!inside) continue;
        const double phase = std::fmod(std::abs(px * ca + py * sa), hatch_period);
        set(x, y, phase < hatch_period / 2.0 ? fill : hatch);
      }
  }

  ImageBuffer take() { return std::move(img_); }

 private:
  ImageBuffer img_;
};

class Painter {
 public:
  explicit Painter(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  Rgb color() {
    return {static_cast<std::uint8_t>(integer(0, 255)), static_cast<std::uint8_t>(integer(0, 255)),
            static_cast<std::uint8_t>(integer(0, 255))};
  }
  Rgb light() {
    return {static_cast<std::uint8_t>(integer(200, 255)), static_cast<std::uint8_t>(integer(200, 255)),
            static_cast<std::uint8_t>(integer(200, 255))};
  }
  Rgb dark() {
    return {static_cast<std::uint8_t>(integer(0, 110)), static_cast<std::uint8_t>(integer(0, 110)),
            static_cast<std::uint8_t>(integer(0, 110))};
  }

  // A row of glyph-like stroke groups inside the box [x0,x1] x [y0,y1].
  void text(Canvas& cv, double x0, double x1, double y0, double y1, const Rgb& ink) {
    const int glyphs = integer(3, 8);
    const double gw = (x1 - x0) / glyphs;
    const double h = y1 - y0;
    const double stroke = std::max(1.5, uniform(0.08, 0.16) * h);
    for (int g = 0; g < glyphs; ++g) {
      const double gx0 = x0 + g * gw + 0.15 * gw;
      const double gx1 = x0 + (g + 1) * gw - 0.15 * gw;
      const double jitter = uniform(-0.05, 0.05) * h;
      const double top = y0 + jitter, bottom = y1 + jitter, mid = (top + bottom) / 2;
      const int strokes = integer(2, 4);
      for (int s = 0; s < strokes; ++s) {
        switch (integer(0, 4)) {
          case 0: cv.line({gx0, top}, {gx0, bottom}, stroke, ink); break;
          case 1: cv.line({gx1, top}, {gx1, bottom}, stroke, ink); break;
          case 2: cv.line({gx0, mid}, {gx1, mid}, stroke, ink); break;
          case 3: cv.line({gx0, bottom}, {gx1, top}, stroke, ink); break;
          default: cv.line({gx0, top}, {gx1, top}, stroke, ink); break;
        }
      }
    }
  }

  // A filled, hatched circle or regular polygon centered at (cx, cy).
  void symbol(Canvas& cv, double cx, double cy, double radius) {
    const Rgb fill = color();
    const Rgb hatch = color();
    const int sides = integer(0, 1) == 0 ? 48 : integer(3, 8);
    const double rot = uniform(0.0, 2.0 * std::numbers::pi);
    std::vector<Point> pts;
    for (int i = 0; i < sides; ++i) {
      const double a = rot + 2.0 * std::numbers::pi * i / sides;
      pts.push_back({cx + radius * std::cos(a), cy + radius * std::sin(a)});
    }
    cv.polygon(pts, fill, hatch, uniform(0.0, std::numbers::pi), uniform(6.0, 18.0));
  }

 private:
  std::mt19937_64 rng_;
};

ImageBuffer draw(int kind, int size, Painter& p) {
  const double s = size;
  Canvas cv(size, p.integer(0, 3) == 0 ? p.color() : p.light());
  if (kind == 2) {  // text
    const double band = p.uniform(0.18, 0.32) * s;
    const double cy = s / 2 + p.uniform(-0.15, 0.15) * s;
    const int lines = p.integer(1, 2);
    const Rgb ink = p.dark();
    for (int l = 0; l < lines; ++l) {
      const double y0 = cy - band / 2 + (l - (lines - 1) / 2.0) * band * 1.3;
      p.text(cv, p.uniform(0.04, 0.15) * s, p.uniform(0.85, 0.96) * s, y0, y0 + band * 0.8, ink);
    }
  } else if (kind == 1) {  // symbol
    const double r = p.uniform(0.28, 0.45) * s;
    p.symbol(cv, s / 2 + p.uniform(-0.05, 0.05) * s, s / 2 + p.uniform(-0.05, 0.05) * s, r);
  } else {  // both: symbol above a text band, or to its left
    const Rgb ink = p.dark();
    if (p.integer(0, 1) == 0) {
      const double r = p.uniform(0.18, 0.26) * s;
      p.symbol(cv, s / 2 + p.uniform(-0.08, 0.08) * s, 0.3 * s, r);
      p.text(cv, 0.08 * s, 0.92 * s, 0.66 * s, p.uniform(0.8, 0.9) * s, ink);
    } else {
      const double r = p.uniform(0.14, 0.2) * s;
      p.symbol(cv, 0.22 * s, s / 2 + p.uniform(-0.08, 0.08) * s, r);
      const double cy = s / 2 + p.uniform(-0.08, 0.08) * s;
      const double band = p.uniform(0.14, 0.22) * s;
      p.text(cv, 0.45 * s, 0.95 * s, cy - band / 2, cy + band / 2, ink);
    }
  }
  return cv.take();
}

}  // namespace

LabeledCorpus generate_synthetic(std::size_t n_per_class, std::uint64_t seed, int size) {
  if (n_per_class < 1) throw std::invalid_argument("generate_synthetic: n_per_class must be >= 1");
  if (size < 16) throw std::invalid_argument("generate_synthetic: image size must be >= 16");
  LabeledCorpus corpus;
  corpus.class_names = {"both", "symbol", "text"};
  Painter painter(seed);
  for (int c = 0; c < 3; ++c)
    for (std::size_t i = 0; i < n_per_class; ++i) {
      CorpusEntry e;
      e.label = c;
      e.path = "synthetic/" + corpus.class_names[c] + "/" + std::to_string(i) + ".png";
      e.image = draw(c, size, painter);
      corpus.entries.push_back(std::move(e));
    }
  return corpus;
}

void write_corpus(const LabeledCorpus& corpus, const fs::path& root) {
  std::vector<std::size_t> counter(corpus.classes(), 0);
  for (const auto& name : corpus.class_names) fs::create_directories(root / name);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& e = corpus.entries[i];
    char name[32];
    std::snprintf(name, sizeof name, "%05zu.png", counter[e.label]++);
    write_png(root / corpus.class_names[e.label] / name, corpus.image(i));
  }
}

Split split(std::span<const int> labels, std::size_t classes, double fraction, std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction < 1.0))
    throw std::invalid_argument("split: fraction must lie in (0, 1)");
  std::vector<std::vector<std::size_t>> members(classes);
  for (std::size_t i = 0; i < labels.size(); ++i) members.at(labels[i]).push_back(i);
  std::mt19937_64 rng(seed);
  Split out;
  for (std::size_t c = 0; c < classes; ++c) {
    auto& m = members[c];
    if (m.size() < 2)
      throw InfeasibleError("split: class " + std::to_string(c) + " has fewer than 2 samples");
    std::shuffle(m.begin(), m.end(), rng);
    // The epsilon keeps products like 0.7 * 70 from flooring to 48.
    auto n_train = static_cast<std::size_t>(std::floor(fraction * m.size() + 1e-9));
    n_train = std::clamp<std::size_t>(n_train, 1, m.size() - 1);
    out.train.insert(out.train.end(), m.begin(), m.begin() + n_train);
    out.test.insert(out.test.end(), m.begin() + n_train, m.end());
  }
  std::sort(out.train.begin(), out.train.end());
  std::sort(out.test.begin(), out.test.end());
  return out;
}

std::uint64_t split_hash(const Split& s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  auto mix = [&h](std::uint64_t v) {
    for (int b = 0; b < 8; ++b) {
      h ^= (v >> (8 * b)) & 0xFF;
      h *= 0x100000001b3ull;
    }
  };
  for (auto i : s.train) mix(i);
  mix(~0ull);
  for (auto i : s.test) mix(i);
  return h;
}

}  // namespace logosym
