/* Copyright 2026 The Metamorph Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "mutate/apply.h"

#include <map>
#include <optional>
#include <sstream>

#include "common/error.h"
#include "common/parallel.h"
#include "common/text.h"
#include "image/codec.h"

namespace metamorph {

namespace fs = std::filesystem;
using nlohmann::json;

std::string ToolVersion() { return std::string("metamorph ") + METAMORPH_VERSION; }

std::vector<std::string> SelectSubset(const std::vector<std::string>& ids, double proportion, Rng& rng) {
  if (!(proportion >= 0.0 && proportion <= 1.0)) {
    Fail(ErrorCode::kInvalidArgument, "proportion outside [0,1]");
  }
  const size_t n = ids.size();
  size_t want = static_cast<size_t>(RoundHalfAway(proportion * static_cast<double>(n)));
  std::vector<std::string> out;
  out.reserve(want);
  // Knuth's algorithm S: each id is kept with probability want/remaining.
  for (size_t i = 0; i < n && want > 0; ++i) {
    if (rng.UniformBelow(n - i) < want) {
      out.push_back(ids[i]);
      --want;
    }
  }
  return out;
}

double MutationManifest::OccludedFraction() const {
  if (train_ids.empty()) return 0.0;
  return static_cast<double>(placements.size()) / static_cast<double>(train_ids.size());
}

json ManifestToJson(const MutationManifest& m) {
  json placements = json::array();
  for (size_t i = 0; i < m.placements.size(); ++i) {
    const auto& p = m.placements[i];
    placements.push_back({
        {"image_id", p.image_id},
        {"sprite_tag", p.sprite_tag},
        {"inserted_bbox", {{"x", p.inserted_bbox.x}, {"y", p.inserted_bbox.y},
                           {"w", p.inserted_bbox.w}, {"h", p.inserted_bbox.h}}},
        {"scale_factor", p.scale_factor},
        {"achieved_iou", p.achieved_iou},
        {"output_path", i < m.output_paths.size() ? m.output_paths[i] : std::string()},
    });
  }
  json skips = json::array();
  for (const auto& s : m.skips) skips.push_back({{"image_id", s.image_id}, {"reason", s.reason}});
  return json{
      {"spec", m.spec},
      {"train_ids", m.train_ids},
      {"selected", m.selected},
      {"placements", placements},
      {"skips", skips},
      {"tool_version", m.tool_version},
  };
}

MutationManifest ManifestFromJson(const json& j) {
  try {
    MutationManifest m;
    m.spec = j.at("spec");
    m.train_ids = j.at("train_ids").get<std::vector<std::string>>();
    m.selected = j.at("selected").get<std::vector<std::string>>();
    for (const auto& p : j.at("placements")) {
      PlacementRecord r;
      r.image_id = p.at("image_id").get<std::string>();
      r.sprite_tag = p.at("sprite_tag").get<std::string>();
      const auto& b = p.at("inserted_bbox");
      r.inserted_bbox = {b.at("x").get<double>(), b.at("y").get<double>(), b.at("w").get<double>(),
                         b.at("h").get<double>()};
      r.scale_factor = p.at("scale_factor").get<double>();
      r.achieved_iou = p.at("achieved_iou").get<double>();
      m.placements.push_back(std::move(r));
      m.output_paths.push_back(p.value("output_path", std::string()));
    }
    for (const auto& s : j.at("skips")) {
      m.skips.push_back({s.at("image_id").get<std::string>(), s.at("reason").get<std::string>()});
    }
    m.tool_version = j.at("tool_version").get<std::string>();
    return m;
  } catch (const json::exception& e) {
    Fail(ErrorCode::kInvalidConfig, std::string("manifest: ") + e.what());
  }
}

MutationManifest ReadManifest(const fs::path& path) {
  json j;
  try {
    j = json::parse(ReadFile(path));
  } catch (const json::parse_error& e) {
    Fail(ErrorCode::kInvalidConfig, path.string() + ": " + e.what());
  }
  return ManifestFromJson(j);
}

namespace {

struct ImageOutcome {
  std::optional<PlacementRecord> placement;
  std::string output_path;
  std::string skip_reason;
};

void CopyFileExact(const fs::path& from, const fs::path& to) {
  std::error_code ec;
  fs::create_directories(to.parent_path(), ec);
  fs::copy_file(from, to, fs::copy_options::overwrite_existing, ec);
  if (ec) Fail(ErrorCode::kIoFailure, "copy " + from.string() + ": " + ec.message());
}

// images.txt with the path token replaced for the given ids. Lines are kept
// verbatim otherwise.
std::string RewriteImageList(const std::string& original, const std::map<std::string, std::string>& renamed) {
  std::ostringstream out;
  std::string_view rest = original;
  while (!rest.empty()) {
    const size_t nl = rest.find('\n');
    std::string_view line = rest.substr(0, nl);
    const bool has_nl = nl != std::string_view::npos;
    rest = has_nl ? rest.substr(nl + 1) : std::string_view{};
    const auto tokens = SplitWhitespace(line);
    auto it = tokens.size() == 2 ? renamed.find(std::string(tokens[0])) : renamed.end();
    if (it != renamed.end()) {
      out << tokens[0] << ' ' << it->second;
    } else {
      out << line;
    }
    if (has_nl) out << '\n';
  }
  return out.str();
}

}  // namespace

MutationManifest ApplyTestCase(const AnnotatedDataset& ds, const TestCaseSpec& spec, const fs::path& out,
                               const ApplyOptions& opts) {
  ValidateTestCase(spec);
  std::error_code ec;
  if (fs::exists(out) && fs::equivalent(out, ds.root(), ec)) {
    Fail(ErrorCode::kInvalidArgument, "output directory is the dataset root");
  }
  fs::create_directories(out, ec);
  if (ec) Fail(ErrorCode::kIoFailure, "cannot create " + out.string() + ": " + ec.message());

  for (const char* name : {kImagesFile, kBoxesFile, kClassesFile, kLabelsFile, kSplitFile}) {
    CopyFileExact(ds.root() / name, out / name);
  }
  for (const auto& rec : ds.images()) {
    CopyFileExact(ds.ImagePath(rec), out / kImagesDir / rec.relative_path);
  }

  MutationManifest manifest;
  manifest.spec = TestCaseToJson(spec);
  manifest.tool_version = ToolVersion();
  for (const auto& rec : ds.images()) {
    if (rec.split == Split::kTrain) manifest.train_ids.push_back(rec.id);
  }
  Rng select_rng(DeriveSeed(spec.seed, "select"));
  manifest.selected = SelectSubset(manifest.train_ids, spec.proportion, select_rng);

  std::vector<Sprite> pool = spec.sprite_pool;
  if (spec.recolor) {
    for (auto& s : pool) s = Recolor(s, *spec.recolor);
  }

  std::vector<ImageOutcome> outcomes(manifest.selected.size());
  ParallelFor(manifest.selected.size(), opts.workers, [&](size_t i) {
    const std::string& id = manifest.selected[i];
    const ImageRecord& rec = *ds.Find(id);
    Rng rng(DeriveSeed(spec.seed, id));
    const Sprite& sprite = pool[rng.UniformBelow(pool.size())];
    RgbImage img = ds.LoadPixels(id);
    ImageOutcome& outcome = outcomes[i];
    try {
      PlacementRecord placement = InsertObject(img, rec.focal_bbox, sprite, spec.occlusion_budget, rng);
      placement.image_id = id;
      fs::path rel = rec.relative_path;
      if (DetectFormat(ds.ImagePath(rec)) != ImageFormat::kPng) {
        fs::remove(out / kImagesDir / rel);
        rel.replace_extension(".png");
      }
      WritePng(out / kImagesDir / rel, img);
      outcome.placement = std::move(placement);
      outcome.output_path = rel.generic_string();
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kNoValidPlacement) throw;
      outcome.skip_reason = e.what();
    }
  });

  std::map<std::string, std::string> renamed;
  for (size_t i = 0; i < outcomes.size(); ++i) {
    auto& o = outcomes[i];
    if (o.placement) {
      const ImageRecord& rec = *ds.Find(manifest.selected[i]);
      if (o.output_path != rec.relative_path) renamed.emplace(rec.id, o.output_path);
      manifest.placements.push_back(std::move(*o.placement));
      manifest.output_paths.push_back(o.output_path);
    } else {
      manifest.skips.push_back({manifest.selected[i], o.skip_reason});
    }
  }
  if (!renamed.empty()) {
    WriteFile(out / kImagesFile, RewriteImageList(ReadFile(ds.root() / kImagesFile), renamed));
  }
  WriteFile(out / kManifestFile, ManifestToJson(manifest).dump(2) + "\n");
  return manifest;
}

}  // namespace metamorph
