#include "srk/labels.hpp"

#include <fstream>
#include <unordered_map>

#include "srk/error.hpp"

namespace srk {

namespace {

// Default seg -> recon table. Two stuff classes, then the object classes;
// empty second entry means none (not reconstructed).
const std::vector<std::pair<std::string, std::string>>& default_rows() {
    static const std::vector<std::pair<std::string, std::string>> rows = {
        {"wall", ""},
        {"floor", ""},
        {"cabinet", "cabinet"},
        {"bed", ""},
        {"chair", "chair"},
        {"sofa", "sofa"},
        {"table", "table"},
        {"door", ""},
        {"window", ""},
        {"bookshelf", "bookshelf"},
        {"picture", ""},
        {"counter", "cabinet"},
        {"desk", "table"},
        {"curtain", ""},
        {"refrigerator", "cabinet"},
        {"shower_curtain", ""},
        {"toilet", ""},
        {"sink", ""},
        {"bathtub", "bathtub"},
        {"trash_bin", "trash_bin"},
        {"display", "display"},
        {"nightstand", "cabinet"},
        {"dresser", "cabinet"},
        {"shelf", "bookshelf"},
        {"other_furniture", ""},
    };
    return rows;
}

} // namespace

LabelSystem LabelSystem::from_rows(const std::vector<std::pair<std::string, std::string>>& rows,
                                   std::string name) {
    LabelSystem sys;
    sys.name_ = std::move(name);
    for (const auto& [seg, recon] : rows) {
        for (const auto& existing : sys.seg_names_)
            if (existing == seg)
                throw InvalidInput("label system: duplicate segmentation category '" + seg + "'");
        sys.seg_names_.push_back(seg);
        if (recon.empty() || recon == "NONE") {
            sys.mapped_.emplace_back(std::nullopt);
        } else {
            sys.mapped_.emplace_back(recon);
            bool seen = false;
            for (const auto& r : sys.recon_names_) seen |= (r == recon);
            if (!seen) sys.recon_names_.push_back(recon);
        }
    }
    return sys;
}

LabelSystem LabelSystem::load_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw LoadError("label table: cannot open '" + path + "'");
    std::vector<std::pair<std::string, std::string>> rows;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos)
            throw LoadError("label table: line " + std::to_string(lineno) +
                            " has no tab separator");
        std::string seg = line.substr(0, tab);
        std::string recon = line.substr(tab + 1);
        if (recon == "NONE") recon.clear();
        rows.emplace_back(seg, recon);
    }
    return from_rows(rows, path);
}

CategoryId LabelSystem::seg_id(const std::string& seg_name) const {
    for (size_t i = 0; i < seg_names_.size(); ++i)
        if (seg_names_[i] == seg_name) return CategoryId(i);
    throw InvalidInput("label system: unknown segmentation category '" + seg_name + "'");
}

const std::string& LabelSystem::seg_name(CategoryId id) const {
    if (id >= seg_names_.size())
        throw InvalidInput("label system: segmentation id " + std::to_string(id) +
                           " out of range");
    return seg_names_[id];
}

std::optional<std::string> LabelSystem::map_label(const std::string& seg_name) const {
    return map_label(seg_id(seg_name));
}

std::optional<std::string> LabelSystem::map_label(CategoryId seg) const {
    if (seg >= mapped_.size())
        throw InvalidInput("label system: segmentation id " + std::to_string(seg) +
                           " out of range");
    return mapped_[seg];
}

const LabelSystem& default_label_system() {
    static const LabelSystem sys = LabelSystem::from_rows(default_rows(), "srk25");
    return sys;
}

} // namespace srk
