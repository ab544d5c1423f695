#include "salmetrics/io.hpp"

#include <png.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <map>
#include <memory>
#include <stdexcept>

#include "json.hpp"

namespace salmetrics {

namespace {

[[noreturn]] void fail(const std::filesystem::path& path, const std::string& what) {
    throw std::runtime_error(path.string() + ": " + what);
}

[[noreturn]] void fail_line(const std::filesystem::path& path, std::size_t line,
                            const std::string& what) {
    throw std::runtime_error(path.string() + ":" + std::to_string(line) + ": " + what);
}

void check_ingested_value(const std::filesystem::path& path, double x) {
    if (!std::isfinite(x)) fail(path, "non-finite value");
    if (x < 0.0) fail(path, "negative value (maps must be >= 0 on ingestion)");
}

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

struct PngReader {
    png_structp png = nullptr;
    png_infop info = nullptr;

    PngReader() {
        png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
        if (png) info = png_create_info_struct(png);
    }
    ~PngReader() { png_destroy_read_struct(&png, &info, nullptr); }
};

struct PngWriter {
    png_structp png = nullptr;
    png_infop info = nullptr;

    PngWriter() {
        png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
        if (png) info = png_create_info_struct(png);
    }
    ~PngWriter() { png_destroy_write_struct(&png, &info); }
};

}  // namespace

Grid load_grid_png(const std::filesystem::path& path) {
    FilePtr f(std::fopen(path.string().c_str(), "rb"));
    if (!f) fail(path, "cannot open");

    PngReader r;
    if (!r.png || !r.info) fail(path, "libpng init failed");
    if (setjmp(png_jmpbuf(r.png))) fail(path, "PNG decode error");

    png_init_io(r.png, f.get());
    png_read_info(r.png, r.info);

    const png_uint_32 w = png_get_image_width(r.png, r.info);
    const png_uint_32 h = png_get_image_height(r.png, r.info);
    const int color = png_get_color_type(r.png, r.info);
    int depth = png_get_bit_depth(r.png, r.info);

    if (color != PNG_COLOR_TYPE_GRAY && color != PNG_COLOR_TYPE_GRAY_ALPHA)
        fail(path, "unsupported color type (grayscale PNG required)");
    if (color == PNG_COLOR_TYPE_GRAY_ALPHA) png_set_strip_alpha(r.png);
    if (depth < 8) {
        png_set_expand_gray_1_2_4_to_8(r.png);
        depth = 8;
    }
    png_read_update_info(r.png, r.info);

    const std::size_t rowbytes = png_get_rowbytes(r.png, r.info);
    std::vector<png_byte> data(rowbytes * h);
    std::vector<png_bytep> rows(h);
    for (png_uint_32 y = 0; y < h; ++y) rows[y] = data.data() + y * rowbytes;
    png_read_image(r.png, rows.data());
    png_read_end(r.png, nullptr);

    Grid g(static_cast<int>(w), static_cast<int>(h), 0.0);
    for (png_uint_32 y = 0; y < h; ++y) {
        const png_bytep row = rows[y];
        for (png_uint_32 x = 0; x < w; ++x) {
            double value;
            if (depth == 16)
                // PNG 16-bit samples are big-endian.
                value = static_cast<double>((row[2 * x] << 8) | row[2 * x + 1]);
            else
                value = static_cast<double>(row[x]);
            g.at(static_cast<int>(x), static_cast<int>(y)) = value;
        }
    }
    return g;
}

std::pair<int, int> png_dims(const std::filesystem::path& path) {
    FilePtr f(std::fopen(path.string().c_str(), "rb"));
    if (!f) fail(path, "cannot open");
    PngReader r;
    if (!r.png || !r.info) fail(path, "libpng init failed");
    if (setjmp(png_jmpbuf(r.png))) fail(path, "PNG decode error");
    png_init_io(r.png, f.get());
    png_read_info(r.png, r.info);
    return {static_cast<int>(png_get_image_width(r.png, r.info)),
            static_cast<int>(png_get_image_height(r.png, r.info))};
}

Grid load_grid_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail(path, "cannot open");

    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::vector<double> row;
        std::size_t pos = 0;
        while (pos <= line.size()) {
            std::size_t comma = line.find(',', pos);
            std::string cell = line.substr(pos, comma == std::string::npos ? std::string::npos
                                                                           : comma - pos);
            char* end = nullptr;
            double x = std::strtod(cell.c_str(), &end);
            if (end == cell.c_str()) fail_line(path, lineno, "not a number: '" + cell + "'");
            check_ingested_value(path, x);
            row.push_back(x);
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        if (!rows.empty() && row.size() != rows.front().size())
            fail_line(path, lineno, "ragged row");
        rows.push_back(std::move(row));
    }
    if (rows.empty()) fail(path, "empty grid");

    Grid g(static_cast<int>(rows.front().size()), static_cast<int>(rows.size()), 0.0);
    for (int y = 0; y < g.height; ++y)
        for (int x = 0; x < g.width; ++x) g.at(x, y) = rows[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)];
    return g;
}

Grid load_grid_bin(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(path, "cannot open");

    std::uint32_t w = 0, h = 0;
    in.read(reinterpret_cast<char*>(&w), 4);
    in.read(reinterpret_cast<char*>(&h), 4);
    if (!in) fail(path, "truncated header");
    if (w == 0 || h == 0 || static_cast<std::uint64_t>(w) * h > (1u << 30))
        fail(path, "implausible dims in header");

    Grid g(static_cast<int>(w), static_cast<int>(h), 0.0);
    in.read(reinterpret_cast<char*>(g.v.data()),
            static_cast<std::streamsize>(g.v.size() * sizeof(double)));
    if (!in) fail(path, "truncated payload");
    for (double x : g.v) check_ingested_value(path, x);
    return g;
}

Grid load_grid(const std::filesystem::path& path) {
    const std::string ext = path.extension().string();
    if (ext == ".png") return load_grid_png(path);
    if (ext == ".csv") return load_grid_csv(path);
    if (ext == ".bin") return load_grid_bin(path);
    fail(path, "unknown grid format (expected .png, .csv or .bin)");
}

void save_grid_csv(const Grid& g, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) fail(path, "cannot open for writing");
    char buf[40];
    for (int y = 0; y < g.height; ++y) {
        for (int x = 0; x < g.width; ++x) {
            std::snprintf(buf, sizeof buf, "%.17g", g.at(x, y));
            out << buf << (x + 1 < g.width ? "," : "");
        }
        out << '\n';
    }
}

void save_grid_bin(const Grid& g, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(path, "cannot open for writing");
    const std::uint32_t w = static_cast<std::uint32_t>(g.width);
    const std::uint32_t h = static_cast<std::uint32_t>(g.height);
    out.write(reinterpret_cast<const char*>(&w), 4);
    out.write(reinterpret_cast<const char*>(&h), 4);
    out.write(reinterpret_cast<const char*>(g.v.data()),
              static_cast<std::streamsize>(g.v.size() * sizeof(double)));
    if (!out) fail(path, "write failed");
}

namespace {

void write_png_rows(const std::filesystem::path& path, int width, int height, int color_type,
                    const std::vector<png_bytep>& rows) {
    FilePtr f(std::fopen(path.string().c_str(), "wb"));
    if (!f) fail(path, "cannot open for writing");
    PngWriter w;
    if (!w.png || !w.info) fail(path, "libpng init failed");
    if (setjmp(png_jmpbuf(w.png))) fail(path, "PNG encode error");
    png_init_io(w.png, f.get());
    png_set_IHDR(w.png, w.info, static_cast<png_uint_32>(width), static_cast<png_uint_32>(height),
                 8, color_type, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
                 PNG_FILTER_TYPE_DEFAULT);
    png_write_info(w.png, w.info);
    png_write_image(w.png, const_cast<png_bytep*>(rows.data()));
    png_write_end(w.png, nullptr);
}

}  // namespace

void save_gray_png(const Grid& g, const std::filesystem::path& path) {
    std::vector<png_byte> data(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        double x = std::clamp(g.v[i], 0.0, 1.0);
        data[i] = static_cast<png_byte>(std::lround(x * 255.0));
    }
    std::vector<png_bytep> rows(static_cast<std::size_t>(g.height));
    for (int y = 0; y < g.height; ++y)
        rows[static_cast<std::size_t>(y)] = data.data() + static_cast<std::size_t>(y) * g.width;
    write_png_rows(path, g.width, g.height, PNG_COLOR_TYPE_GRAY, rows);
}

void save_rgb_png(const RgbImage& img, const std::filesystem::path& path) {
    static_assert(sizeof(Rgb) == 3, "Rgb must be tightly packed");
    std::vector<png_bytep> rows(static_cast<std::size_t>(img.height));
    for (int y = 0; y < img.height; ++y)
        rows[static_cast<std::size_t>(y)] = const_cast<png_bytep>(
            reinterpret_cast<const png_byte*>(img.px.data() + static_cast<std::size_t>(y) * img.width));
    write_png_rows(path, img.width, img.height, PNG_COLOR_TYPE_RGB, rows);
}

namespace {

// Accumulates (image_id, observer_id, x, y) tuples into FixationSets grouped
// by image in first-appearance order.
class FixationBuilder {
public:
    void add(const std::string& image_id, const std::string& observer_id, int x, int y) {
        auto [it, fresh] = index_.try_emplace(image_id, sets_.size());
        if (fresh) sets_.push_back(FixationSet{image_id, {}});
        FixationSet& fs = sets_[it->second];
        if (fs.observers.empty() || fs.observers.back().id != observer_id) {
            auto found = std::find_if(fs.observers.begin(), fs.observers.end(),
                                      [&](const Observer& o) { return o.id == observer_id; });
            if (found == fs.observers.end()) {
                fs.observers.push_back(Observer{observer_id, {}});
                found = std::prev(fs.observers.end());
            }
            found->points.push_back(Point{x, y});
            return;
        }
        fs.observers.back().points.push_back(Point{x, y});
    }

    std::vector<FixationSet> take() { return std::move(sets_); }

private:
    std::map<std::string, std::size_t> index_;
    std::vector<FixationSet> sets_;
};

}  // namespace

std::vector<FixationSet> load_fixations_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail(path, "cannot open");

    FixationBuilder builder;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (lineno == 1 && line.rfind("image_id", 0) == 0) continue;  // header

        std::array<std::string, 4> cells;
        std::size_t pos = 0;
        for (int i = 0; i < 4; ++i) {
            std::size_t comma = line.find(',', pos);
            if (i < 3 && comma == std::string::npos)
                fail_line(path, lineno, "expected 4 columns (image_id,observer_id,x,y)");
            cells[static_cast<std::size_t>(i)] =
                line.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
            pos = comma == std::string::npos ? line.size() + 1 : comma + 1;
        }
        if (pos <= line.size()) fail_line(path, lineno, "expected 4 columns, got more");
        if (cells[0].empty() || cells[1].empty()) fail_line(path, lineno, "empty id column");

        char* end = nullptr;
        long x = std::strtol(cells[2].c_str(), &end, 10);
        if (end == cells[2].c_str() || *end != '\0') fail_line(path, lineno, "bad x coordinate");
        long y = std::strtol(cells[3].c_str(), &end, 10);
        if (end == cells[3].c_str() || *end != '\0') fail_line(path, lineno, "bad y coordinate");
        if (x < 0 || y < 0) fail_line(path, lineno, "negative coordinate");

        builder.add(cells[0], cells[1], static_cast<int>(x), static_cast<int>(y));
    }
    return builder.take();
}

std::vector<FixationSet> load_fixations_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail(path, "cannot open");
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        fail(path, std::string("JSON parse error: ") + e.what());
    }
    if (!doc.is_array()) fail(path, "expected a top-level array of fixation records");

    FixationBuilder builder;
    for (std::size_t i = 0; i < doc.size(); ++i) {
        const auto& rec = doc[i];
        if (!rec.is_object() || !rec.contains("image_id") || !rec.contains("observer_id") ||
            !rec.contains("x") || !rec.contains("y"))
            fail(path, "record " + std::to_string(i) +
                           " must have image_id, observer_id, x, y");
        const int x = rec.at("x").get<int>();
        const int y = rec.at("y").get<int>();
        if (x < 0 || y < 0) fail(path, "record " + std::to_string(i) + ": negative coordinate");
        builder.add(rec.at("image_id").get<std::string>(),
                    rec.at("observer_id").get<std::string>(), x, y);
    }
    return builder.take();
}

std::vector<FixationSet> load_fixations(const std::filesystem::path& path) {
    const std::string ext = path.extension().string();
    if (ext == ".csv") return load_fixations_csv(path);
    if (ext == ".json") return load_fixations_json(path);
    fail(path, "unknown fixation format (expected .csv or .json)");
}

}  // namespace salmetrics
