// Copyright 2026 The FFR Toolkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ffr/cms/http_server.hpp"

#include <httplib.h>

namespace ffr::cms {
namespace {

constexpr const char* kJson = "application/json";

void send(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), kJson);
}

void send_error(httplib::Response& res, int status, std::string_view code, const std::string& message) {
  send(res, status, json{{"error", code}, {"message", message}});
}

// Runs a handler, translating store errors into status codes.
template <typename F>
void guarded(httplib::Response& res, F&& f) {
  try {
    f();
  } catch (const Error& e) {
    send_error(res, http_status(e.code()), to_string(e.code()), e.what());
  } catch (const json::exception& e) {
    send_error(res, 400, "InvalidArgument", std::string("bad JSON: ") + e.what());
  } catch (const std::exception& e) {
    send_error(res, 500, "Internal", e.what());
  }
}

json parse_body(const httplib::Request& req) {
  json body = json::parse(req.body, nullptr, false);
  if (body.is_discarded() || !body.is_object()) {
    throw Error(Errc::InvalidArgument, "request body must be a JSON object");
  }
  return body;
}

std::string string_field(const json& body, const char* key) {
  if (!body.contains(key)) throw Error(Errc::MissingField, std::string("missing \"") + key + "\"");
  const json& v = body.at(key);
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return v.dump();
  throw Error(Errc::InvalidArgument, std::string("\"") + key + "\" must be a string");
}

}  // namespace

int http_status(Errc code) noexcept {
  switch (code) {
    case Errc::UnknownTask:
    case Errc::UnknownItem:
    case Errc::UnknownAnnotator:
      return 404;
    case Errc::PhaseViolation:
    case Errc::DuplicateSubmission:
    case Errc::TaskComplete:
      return 409;
    case Errc::Io:
    case Errc::CorruptLine:
      return 500;
    default:
      return 400;
  }
}

struct HttpServer::Impl {
  Store& store;
  httplib::Server server;

  explicit Impl(Store& s) : store(s) {}
};

HttpServer::HttpServer(Store& store) : impl_(std::make_unique<Impl>(store)) {
  auto& srv = impl_->server;
  Store& st = impl_->store;

  // The annotator UI may be served from another origin.
  srv.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                           {"Access-Control-Allow-Headers", "Content-Type"},
                           {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"}});
  srv.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

  srv.Get("/health", [](const httplib::Request&, httplib::Response& res) {
    send(res, 200, json{{"ok", true}});
  });

  srv.Post("/tasks", [&st](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const std::string id = st.create_task(task_spec_from_json(parse_body(req)));
      send(res, 201, json{{"id", id}, {"task", st.task_json(id)}});
    });
  });

  srv.Get("/tasks", [&st](const httplib::Request&, httplib::Response& res) {
    guarded(res, [&] { send(res, 200, json{{"tasks", st.task_ids()}}); });
  });

  srv.Get(R"(/tasks/([^/]+))", [&st](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { send(res, 200, st.task_json(req.matches[1])); });
  });

  srv.Get(R"(/tasks/([^/]+)/next)", [&st](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      if (!req.has_param("annotator")) throw Error(Errc::MissingField, "missing ?annotator=");
      const std::string task = req.matches[1];
      const std::string annotator = req.get_param_value("annotator");
      try {
        send(res, 200, st.next_item(task, annotator));
      } catch (const Error& e) {
        if (e.code() != Errc::TaskComplete) throw;
        send(res, 200, json{{"task", task}, {"annotator", annotator}, {"complete", true}});
      }
    });
  });

  srv.Post(R"(/tasks/([^/]+)/scores)", [&st](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const json body = parse_body(req);
      if (!body.contains("phase")) throw Error(Errc::MissingField, "missing \"phase\"");
      if (!body.contains("score")) throw Error(Errc::MissingField, "missing \"score\"");
      if (!body.at("score").is_number()) throw Error(Errc::OutOfRange, "\"score\" must be a number in [0, 1]");
      send(res, 201,
           st.submit_score(req.matches[1], string_field(body, "annotator"), string_field(body, "item"),
                           parse_phase(body.at("phase")), body.at("score").get<double>()));
    });
  });

  srv.Get(R"(/tasks/([^/]+)/report)", [&st](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { send(res, 200, st.report(req.matches[1])); });
  });
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool HttpServer::serve() { return impl_->server.listen_after_bind(); }

void HttpServer::stop() { impl_->server.stop(); }

void HttpServer::wait_until_ready() const { impl_->server.wait_until_ready(); }

}  // namespace ffr::cms
