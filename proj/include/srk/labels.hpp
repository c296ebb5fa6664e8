#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace srk {

using CategoryId = uint16_t;

// Bridges the 25-name segmentation label system to the 8 reconstruction
// categories. Every segmentation name maps to exactly one reconstruction
// name or to none (stuff and objects without a reconstruction counterpart).
class LabelSystem {
  public:
    // Builds from explicit rows of (segmentation name, reconstruction name or
    // empty for none). Reconstruction names are collected in first-seen order.
    static LabelSystem from_rows(const std::vector<std::pair<std::string, std::string>>& rows,
                                 std::string name = "custom");

    // Plain-text override table: one `seg_name<TAB>recon_name_or_NONE` per
    // line, UTF-8, LF line endings. '#' starts a comment line.
    static LabelSystem load_table(const std::string& path);

    const std::string& name() const { return name_; }
    const std::vector<std::string>& seg_categories() const { return seg_names_; }
    const std::vector<std::string>& recon_categories() const { return recon_names_; }

    size_t seg_count() const { return seg_names_.size(); }

    CategoryId seg_id(const std::string& seg_name) const; // throws InvalidInput when unknown
    const std::string& seg_name(CategoryId id) const;

    // Mapped reconstruction category, or nullopt for none. Throws
    // InvalidInput for a name/id outside the label system.
    std::optional<std::string> map_label(const std::string& seg_name) const;
    std::optional<std::string> map_label(CategoryId seg) const;

    bool is_stuff(CategoryId seg) const { return !mapped_[seg].has_value(); }

  private:
    std::string name_;
    std::vector<std::string> seg_names_;
    std::vector<std::string> recon_names_;
    std::vector<std::optional<std::string>> mapped_; // by seg id
};

// Built-in default: 25 segmentation categories (2 stuff + 23 object) mapped
// onto the 8 reconstruction categories.
const LabelSystem& default_label_system();

} // namespace srk
