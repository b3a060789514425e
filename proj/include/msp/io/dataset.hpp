#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace msp {

enum class Split { kTrain, kVal, kTest, kNone };

std::string_view split_name(Split s);
// Accepts train|val|test|none (and an empty cell as none).
bool parse_split(std::string_view text, Split& out);

struct DatasetRecord {
  std::string id;
  std::filesystem::path pdb;
  std::filesystem::path mesh;
  std::filesystem::path mol;  // empty when the task has no ligand
  double target = 0.0;        // pK value or class label
  Split split = Split::kNone;
};

struct RejectedRow {
  std::size_t line = 0;
  std::string id;
  std::string reason;
};

struct DatasetIndex {
  std::vector<DatasetRecord> records;
  std::vector<RejectedRow> rejected;
};

// CSV with header id,pdb,mesh,mol,target,split (any column order). Relative
// paths resolve against the CSV's directory. Rows with bad values or missing
// files land in `rejected`; MissingColumn and DuplicateId throw.
DatasetIndex load_dataset_index(const std::filesystem::path& csv_path);
DatasetIndex parse_dataset_index(std::string_view csv_text, const std::filesystem::path& base_dir);

std::vector<std::string> split_csv_line(std::string_view line);

}  // namespace msp
