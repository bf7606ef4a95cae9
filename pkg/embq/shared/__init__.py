# Shared configuration and error handling for the embq packages
