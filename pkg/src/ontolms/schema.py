"""Well-known names of the curriculum/user/resource schema.

The store itself is schema-agnostic; these constants are the vocabulary the
seed corpus declares and the catalog, quiz engine and service build on.
"""

# class hierarchy roots
COMPUTER_SCIENCE = "ComputerScience"
RESOURCE = "Resource"
USER = "User"

# user role classes (subclasses of User)
STUDENT = "Student"
TEACHER = "Teacher"
ADMIN = "Admin"
MANAGER = "Manager"
ROLE_CLASSES = (ADMIN, TEACHER, STUDENT, MANAGER)

# resource kind classes (subclasses of Resource)
LECTURE_NOTES = "LectureNotes"
VIDEO = "Video"
BOOK = "Book"
AUDIO = "Audio"
EXERCISE = "Exercise"
RESOURCE_KINDS = (LECTURE_NOTES, VIDEO, BOOK, AUDIO, EXERCISE)

# object properties
IS_STUDENT_OF = "isStudentOf"
IS_TEACHER_OF = "isTeacherOf"
TEACHES = "teaches"
TAUGHT_BY = "taughtBy"
UPLOADED_BY = "uploadedBy"
IS_PURSUING = "isPursuing"
ENROLLED_AT = "enrolledAt"
ADDED_BY = "addedBy"
CONTAINS = "contains"

# data properties (all string-typed)
PATH = "path"
FORMAT = "format"
USERID = "userid"
NAME = "name"
VARK = "VARK"

# tokens allowed as the value of the `format` data property, and the
# learning style each one serves best
FORMAT_TO_STYLE = {
    "video": "Visual",
    "audio": "Aural",
    "lecture-notes": "ReadWrite",
    "book": "ReadWrite",
    "exercise": "Kinesthetic",
    "lab": "Kinesthetic",
}
FORMAT_TOKENS = tuple(sorted(FORMAT_TO_STYLE))

# every taxonomy class gains a companion individual <Class>Course that
# object properties can target as "the course"
COURSE_SUFFIX = "Course"


def course_individual(class_id: str) -> str:
    return class_id + COURSE_SUFFIX
