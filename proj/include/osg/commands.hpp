#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "osg/config.hpp"
#include "osg/table.hpp"

namespace osg {

/// One output table; written as <name>.csv or <name>.json.
struct Product {
  std::string name;
  SnapshotTable table;
};

std::vector<std::string> subcommand_names();

/// Computes every table of a subcommand without touching the filesystem.
/// Warnings (e.g. strong coupling not satisfied) go to `log`.
std::vector<Product> build_products(std::string_view subcommand, const RunConfig& config,
                                    std::ostream& log);

/// Writes all products or none: files are staged and renamed at the end,
/// and anything already written is removed on failure.
std::vector<std::filesystem::path> write_products(const std::vector<Product>& products,
                                                  const std::filesystem::path& dir, Format format);

/// Builds and writes; returns the process exit status.
int run_subcommand(std::string_view name, const RunConfig& config, std::ostream& out,
                   std::ostream& err);

}  // namespace osg
