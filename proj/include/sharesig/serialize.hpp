#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "sharesig/ability.hpp"
#include "sharesig/config.hpp"
#include "sharesig/simulate.hpp"
#include "sharesig/worldview.hpp"

namespace sharesig {

using Json = nlohmann::ordered_json;

Json to_json(const ModelParams& p);
Json to_json(const DistributionSpec& d);
Json to_json(const AbilityEquilibrium& eq);
Json to_json(const WorldviewEquilibrium& eq);
Json to_json(const Assumption1Audit& audit);
Json to_json(const SimReport& r);

/// Plain CSV table; numbers go through format_double.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  CsvTable& row();
  CsvTable& cell(double v);
  CsvTable& cell(std::string_view v);

  std::size_t rows() const { return rows_; }
  std::string str() const;
  void write(const std::filesystem::path& path) const;

 private:
  void close_row();

  std::size_t columns_;
  std::size_t rows_ = 0;
  std::size_t filled_ = 0;
  bool open_ = false;
  std::string out_;
};

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace sharesig
