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

#include "likert/service.h"

#include <algorithm>

#include "common/error.h"
#include "common/text.h"
#include "httplib.h"
#include "metrics/classifier.h"

namespace metamorph::likert {

namespace fs = std::filesystem;
using nlohmann::json;

int HttpStatusFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUnknownSession:
    case ErrorCode::kUnknownImage:
    case ErrorCode::kMissingFile:
      return 404;
    case ErrorCode::kSessionClosed:
      return 409;
    case ErrorCode::kIoFailure:
      return 500;
    default:
      return 400;
  }
}

namespace {

void Reply(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void ReplyError(httplib::Response& res, int status, std::string_view kind, const std::string& message) {
  Reply(res, status, {{"error", kind}, {"message", message}});
}

// Runs `fn`, turning library and JSON errors into error responses.
template <typename Fn>
void Guarded(httplib::Response& res, Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    ReplyError(res, HttpStatusFor(e.code()), ErrorCodeName(e.code()), e.what());
  } catch (const json::exception& e) {
    ReplyError(res, 400, "MalformedRequest", e.what());
  } catch (const std::exception& e) {
    ReplyError(res, 500, "Internal", e.what());
  }
}

json ParseBody(const httplib::Request& req) {
  json j = json::parse(req.body.empty() ? std::string("{}") : req.body);
  if (!j.is_object()) Fail(ErrorCode::kInvalidArgument, "request body must be a JSON object");
  return j;
}

std::string ContentType(const fs::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  if (ext == ".png") return "image/png";
  if (ext == ".jpg" || ext == ".jpeg") return "image/jpeg";
  return "application/octet-stream";
}

json SessionSummary(const Store& store, const Session& s) {
  json j = SessionToJson(s);
  j["raters"] = store.Raters(s.id);
  return j;
}

}  // namespace

struct Service::Impl {
  ServiceOptions opts;
  Store store;
  httplib::Server server;

  Impl(ServiceOptions o, Store::Clock clock)
      : opts(std::move(o)), store(opts.sessions_dir, std::move(clock)) {}

  std::vector<SessionImage> ImagesFromRequest(const json& body) const {
    std::vector<SessionImage> images;
    if (body.contains("images")) {
      for (const auto& im : body.at("images")) {
        images.push_back({im.at("id").get<std::string>(), im.at("path").get<std::string>()});
      }
      return images;
    }
    if (!body.contains("images_dir")) Fail(ErrorCode::kInvalidArgument, "images or images_dir required");
    fs::path dir = body.at("images_dir").get<std::string>();
    if (dir.is_relative()) dir = opts.images_root / dir;
    if (!fs::is_directory(dir)) Fail(ErrorCode::kInvalidArgument, "not a directory: " + dir.string());
    for (const auto& p : ListImages(dir)) images.push_back({p.stem().string(), fs::absolute(p).string()});
    return images;
  }

  void Routes() {
    server.Get("/sessions", [this](const httplib::Request&, httplib::Response& res) {
      Guarded(res, [&] {
        json list = json::array();
        for (const auto& s : store.Sessions()) list.push_back(SessionSummary(store, s));
        Reply(res, 200, {{"sessions", list}});
      });
    });

    server.Post("/sessions", [this](const httplib::Request& req, httplib::Response& res) {
      Guarded(res, [&] {
        const json body = ParseBody(req);
        const std::string test_case = body.at("test_case").get<std::string>();
        const auto scales = body.value("scales", std::vector<std::string>{"semantic", "realistic"});
        const size_t sample = body.value("sample_size", kDefaultSampleSize);
        const uint64_t seed = body.value("seed", uint64_t{0});
        const Session s = store.CreateSession(test_case, ImagesFromRequest(body), scales, sample, seed);
        Reply(res, 201, SessionSummary(store, s));
      });
    });

    server.Get(R"(/sessions/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
      Guarded(res, [&] {
        const Session s = store.Get(req.matches[1]);
        Reply(res, 200, SessionSummary(store, s));
      });
    });

    server.Get(R"(/sessions/([^/]+)/next)", [this](const httplib::Request& req, httplib::Response& res) {
      Guarded(res, [&] {
        const std::string id = req.matches[1];
        const std::string rater = req.get_param_value("rater");
        if (rater.empty()) Fail(ErrorCode::kInvalidArgument, "rater query parameter required");
        const Session s = store.Get(id);
        if (s.status == Status::kClosed) Fail(ErrorCode::kSessionClosed, id);
        const auto prompt = store.Next(id, rater);
        const Progress progress = store.RaterProgress(id, rater);
        json j = {{"session", id},
                  {"rater", rater},
                  {"progress", {{"scored", progress.scored}, {"total", progress.total}}},
                  {"done", !prompt.has_value()}};
        if (prompt) {
          j["image"] = prompt->image;
          j["scale"] = prompt->scale;
          j["image_url"] = "/sessions/" + id + "/images/" + prompt->image;
        }
        Reply(res, 200, j);
      });
    });

    server.Post(R"(/sessions/([^/]+)/scores)", [this](const httplib::Request& req, httplib::Response& res) {
      Guarded(res, [&] {
        const json body = ParseBody(req);
        Score s;
        s.session_id = req.matches[1];
        s.rater = body.at("rater").get<std::string>();
        s.image = body.at("image").get<std::string>();
        s.scale = body.at("scale").get<std::string>();
        if (!body.at("value").is_number_integer()) Fail(ErrorCode::kValueOutOfRange, "value must be an integer");
        s.value = body.at("value").get<int>();
        store.RecordScore(s);
        const Progress p = store.RaterProgress(s.session_id, s.rater);
        Reply(res, 200, {{"ok", true}, {"progress", {{"scored", p.scored}, {"total", p.total}}}});
      });
    });

    server.Post(R"(/sessions/([^/]+)/close)", [this](const httplib::Request& req, httplib::Response& res) {
      Guarded(res, [&] {
        store.Close(req.matches[1]);
        Reply(res, 200, SessionSummary(store, store.Get(req.matches[1])));
      });
    });

    server.Get(R"(/sessions/([^/]+)/aggregate)", [this](const httplib::Request& req, httplib::Response& res) {
      Guarded(res, [&] {
        const std::string id = req.matches[1];
        const Aggregate agg = store.Summarize(id);
        json formatted = json::object();
        for (const auto& [scale, a] : agg) formatted[scale] = a.n == 0 ? "-" : FormatMeanStd(a.mean, a.std);
        Reply(res, 200, {{"session", id},
                         {"status", StatusName(store.Get(id).status)},
                         {"scales", AggregateToJson(agg)},
                         {"formatted", formatted}});
      });
    });

    auto serve_image = [this](const std::string& image, const std::string& session, httplib::Response& res) {
      Guarded(res, [&] {
        const auto path = store.ImagePath(image, session);
        if (!path) Fail(ErrorCode::kUnknownImage, image);
        fs::path file = *path;
        if (file.is_relative()) file = opts.images_root / file;
        res.set_content(ReadFile(file), ContentType(file));
        res.status = 200;
      });
    };
    server.Get(R"(/images/([^/]+))", [serve_image](const httplib::Request& req, httplib::Response& res) {
      serve_image(req.matches[1], req.get_param_value("session"), res);
    });
    server.Get(R"(/sessions/([^/]+)/images/([^/]+))",
               [serve_image](const httplib::Request& req, httplib::Response& res) {
                 serve_image(req.matches[2], req.matches[1], res);
               });

    if (!opts.static_dir.empty()) server.set_mount_point("/", opts.static_dir.string());
  }
};

Service::Service(ServiceOptions opts, Store::Clock clock)
    : impl_(std::make_unique<Impl>(std::move(opts), std::move(clock))) {
  impl_->Routes();
}

Service::~Service() { Stop(); }

bool Service::Listen(const std::string& host, int port) { return impl_->server.listen(host, port); }

int Service::Bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool Service::ListenAfterBind() { return impl_->server.listen_after_bind(); }

void Service::Stop() {
  if (impl_) impl_->server.stop();
}

bool Service::IsRunning() const { return impl_->server.is_running(); }

void Service::WaitUntilReady() const { impl_->server.wait_until_ready(); }

Store& Service::store() { return impl_->store; }

}  // namespace metamorph::likert
