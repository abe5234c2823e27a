/*
Copyright 2026 The BlinQS Authors
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
you may obtain a copy of the License at

                http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#ifndef BLINQS_ERROR_HPP
#define BLINQS_ERROR_HPP

#include <stdexcept>
#include <string>

namespace blinqs
{

   class Error : public std::runtime_error
   {
   public:
       using std::runtime_error::runtime_error;
   };

   // A caller passed arguments outside an operation's domain.
   class ArgumentError : public Error
   {
   public:
       using Error::Error;
   };

   // Malformed or unsupported input data (streams, image files).
   class FormatError : public Error
   {
   public:
       enum class Kind
       {
           bad_magic,
           unsupported_version,
           truncated_header,
           length_mismatch,
           geometry_mismatch,
           unsupported_image,
           malformed_image
       };

       FormatError(Kind kind, const std::string& what) : Error(what), _kind(kind) {}

       Kind kind() const { return _kind; }

   private:
       Kind _kind;
   };

   // Internal consistency check failed; always a bug.
   class InvariantError : public Error
   {
   public:
       using Error::Error;
   };

}

#endif
