#include "salmetrics/dataset.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "salmetrics/io.hpp"

namespace salmetrics {

const DatasetImage* Dataset::find(const std::string& image_id) const {
    const auto it = std::lower_bound(
        images.begin(), images.end(), image_id,
        [](const DatasetImage& a, const std::string& id) { return a.fixations.image_id < id; });
    if (it == images.end() || it->fixations.image_id != image_id) return nullptr;
    return &*it;
}

namespace {

std::map<std::string, std::pair<int, int>> load_sizes(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::map<std::string, std::pair<int, int>> sizes;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line_no == 1 && line.rfind("image_id", 0) == 0) continue;
        std::istringstream ss(line);
        std::string id, ws, hs;
        if (!std::getline(ss, id, ',') || !std::getline(ss, ws, ',') || !std::getline(ss, hs))
            throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                                     ": expected image_id,width,height");
        const int w = std::stoi(ws);
        const int h = std::stoi(hs);
        if (w <= 0 || h <= 0)
            throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                                     ": non-positive size");
        sizes[id] = {w, h};
    }
    return sizes;
}

}  // namespace

Dataset load_dataset(const std::filesystem::path& dir) {
    std::filesystem::path fix_path = dir / "fixations.csv";
    if (!std::filesystem::exists(fix_path)) fix_path = dir / "fixations.json";
    if (!std::filesystem::exists(fix_path))
        throw std::runtime_error("no fixations.csv or fixations.json in " + dir.string());

    std::vector<FixationSet> sets = load_fixations(fix_path);
    if (sets.empty()) throw std::runtime_error("dataset has no images: " + fix_path.string());

    std::map<std::string, std::pair<int, int>> sizes;
    const std::filesystem::path sizes_path = dir / "sizes.csv";
    if (std::filesystem::exists(sizes_path)) sizes = load_sizes(sizes_path);

    Dataset ds;
    for (FixationSet& fs : sets) {
        DatasetImage img;
        if (const auto it = sizes.find(fs.image_id); it != sizes.end()) {
            img.width = it->second.first;
            img.height = it->second.second;
        } else {
            const std::filesystem::path stim = dir / "stimuli" / (fs.image_id + ".png");
            if (!std::filesystem::exists(stim))
                throw std::runtime_error("no size for image '" + fs.image_id +
                                         "': absent from sizes.csv and no stimulus PNG");
            const auto [w, h] = png_dims(stim);
            img.width = w;
            img.height = h;
        }
        img.fixations = std::move(fs);
        ds.images.push_back(std::move(img));
    }
    std::sort(ds.images.begin(), ds.images.end(), [](const DatasetImage& a, const DatasetImage& b) {
        return a.fixations.image_id < b.fixations.image_id;
    });
    return ds;
}

}  // namespace salmetrics
