#pragma once

#include <string>

#include "tsrnn/skeleton.hpp"

namespace tsrnn {

enum class DatasetFormat { Jsonl, SyntheticManifest };

DatasetFormat parse_format(const std::string& name);

// JSON-lines: header record with class/graph metadata, then one record per
// sequence. A synthetic-manifest file is a JSON generator spec that is
// expanded on load (see synthetic.hpp).
Dataset load_dataset(const std::string& path, DatasetFormat format = DatasetFormat::Jsonl);
void save_dataset(const Dataset& ds, const std::string& path);

}  // namespace tsrnn
