#pragma once

#include <filesystem>
#include <iosfwd>

#include "blogrec/fm/model.hpp"

namespace blogrec::fm {

struct StoredModel {
  FeatureSpace space;
  FmModel model;
};

// Versioned text container. One line per parameter block, values printed
// with 12 significant digits.
void write_model(std::ostream& out, const FeatureSpace& space, const FmModel& model);
StoredModel read_model(std::istream& in);

void save_model(const std::filesystem::path& path, const FeatureSpace& space, const FmModel& model);
StoredModel load_model(const std::filesystem::path& path);

}  // namespace blogrec::fm
