import os


def define_env(env):
    """
    Macros for embedding repository files in the documentation.
    """

    @env.macro
    def read_file(filepath):
        # Resolve the file path relative to the mkdocs.yml file
        full_path = os.path.join(env.project_dir, filepath)
        try:
            with open(full_path, "r", encoding="utf-8") as file:
                return file.read()
        except FileNotFoundError:
            return f"Error: File {filepath} not found."

    @env.macro
    def example_document(name):
        """A file from the bundled data directory as a fenced JSON block."""
        path = os.path.join(env.conf["extra"]["data_path"], name)
        return f"```json\n{read_file(path)}```"
